"""
Reading s off an almost positive diagram
========================================

One negative crossing, two kinds of diagram. The Seifert picture
decides which formula for s applies, and Khovanov homology agrees.
"""

from khoval import add_kink, braid_to_pd, check_support, classify, kh, report
from khoval.diagram import canonical_genus, seifert

samples = {
    "s1^2 S1 (unknot)": braid_to_pd([1, 1, -1], 2),
    "trefoil with a negative kink": add_kink(braid_to_pd([1, 1, 1], 2), sign=-1),
    "s1^5 s2 S1 s2 on 3 strands": braid_to_pd([1, 1, 1, 1, 1, 2, -1, 2], 3),
}

for name, d in samples.items():
    cls = classify(d)
    r = report(d)
    t = kh(d)
    print(f"-- {name}")
    print(f"   class {cls.tag}, Seifert circles {seifert(d).circle_count}, g3(D) {canonical_genus(d)}")
    print(f"   s = {r.s}  via  {r.s_formula}")
    print(f"   KH^0 lives in q-degrees {t.support(0)}")
    print(f"   support check: {check_support(r.s, t).detail}")
    for v in r.checks:
        print(f"   {'ok ' if v.passed else 'BAD'} {v.name}: {v.detail}")
