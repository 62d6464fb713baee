"""
From a PD code to Khovanov homology
===================================

The right-handed trefoil, taken apart one layer at a time.
"""

from collections import Counter

from khoval import build_complex, derive_signs, homology_dims, jones_from_kh, jones_oracle, kh, parse_pd, resolve

d = derive_signs(parse_pd("X(4,2,5,1) X(2,6,3,5) X(6,4,1,3)"))
print("signs", [x.sign for x in d.crossings], "writhe", d.writhe)

# every corner of the cube is a set of circles
for bits in range(1 << d.n):
    st = resolve(d, bits)
    print(f"state {st.word}  circles {st.circle_count}")

# chain groups by homological degree
c = build_complex(d)
levels = Counter()
for (i, _), dim in c.dims.items():
    levels[i] += dim
print("chain ranks", dict(sorted(levels.items())))

raw = homology_dims(c)
print("unnormalized", dict(sorted(raw.dims.items())))

t = kh(d)
print("normalized  ", dict(sorted(t.dims.items())))

# graded Euler characteristic against the bracket state sum
print("V from KH    ", jones_from_kh(t, 1))
print("V from bracket", jones_oracle(d))
