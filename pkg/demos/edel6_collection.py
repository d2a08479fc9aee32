"""
The extendable collection in F_3^6
==================================

Build the three cap sets A0, A1, A2 from the 2-(6,3,2) design, check them
by brute force, and look at how they overlap.
"""

from capsets.constructions import DESIGN_MATRIX, build_edel6, edel6_parts
from capsets.gf3 import is_cap_set, is_extendable

# The design: 6 points, 10 blocks of size 3, every pair of points in two blocks.
for row in DESIGN_MATRIX:
    print(" ".join(map(str, row)))

parts = edel6_parts()
for name, s in parts.items():
    print(f"{name:3s} {len(s):4d} vectors")

triple = build_edel6()
a0, a1, a2 = triple.components
print("sizes", triple.sizes, "provenance", triple.provenance)
print("|A1 & A2| =", len(a1.intersection(a2)))

# Each part is a cap set on its own, and together they are extendable.
print("caps:", all(is_cap_set(s) for s in triple.components))
print("extendable:", bool(is_extendable(a0, a1, a2)))

# Swapping A1 and A2 keeps the conditions symmetric.
print("swapped:", bool(is_extendable(a0, a2, a1)))
