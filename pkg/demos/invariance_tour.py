"""
Same knot, different diagrams
=============================

Reorder crossings, add kinks, conjugate and stabilize a braid:
the normalized table never moves while the raw one shifts with
the crossing signs.
"""

from khoval import add_kink, braid_to_pd, build_complex, homology_dims, kh, mirror, reorder

word = [1, 1, 1, 2, -1, 2]
d = braid_to_pd(word, 3)
base = kh(d)
raw_base = homology_dims(build_complex(d)).dims
print("KH of", word, dict(sorted(base.dims.items())))

variants = {
    "reversed crossing order": reorder(d, list(range(d.n))[::-1]),
    "positive kink": add_kink(d, sign=1),
    "negative kink": add_kink(d, sign=-1),
    "conjugated word": braid_to_pd(word[2:] + word[:2], 3),
    "stabilized on 4 strands": braid_to_pd(word + [3], 4),
}
for name, v in variants.items():
    raw = homology_dims(build_complex(v))
    print(f"{name:<26} same KH: {kh(v) == base}   raw table shifted: {raw.dims != raw_base}")

m = kh(mirror(d))
print("mirror flips both gradings:", m.dims == {(-i, -j): x for (i, j), x in base.dims.items()})
