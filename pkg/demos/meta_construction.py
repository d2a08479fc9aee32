"""
Building admissible sets from admissible sets
=============================================

A meta-extendable triple (S0, S1, S2) plays the role of (A0, A1, A2) one
level up: an admissible T picks, block by block, which S_i to use.
"""

from math import comb

from capsets.gf3 import CountOnly, VectorSet
from capsets.patterns import (
    build_chain,
    certify_meta,
    declared_meta,
    is_admissible,
    meta_extend,
    search_meta_s0,
    swap_colors,
)

# The smallest example.
triple = certify_meta(VectorSet([(0, 1)]), VectorSet([(1, 2)]), VectorSet([(2, 1)]))
t = meta_extend(build_chain(2), triple)
print([("".join(map(str, v))) for v in t], bool(is_admissible(t)))

# A searched S0 against a chain and its colour swap.
s1 = build_chain(5)
s2 = swap_colors(s1)
s0 = search_meta_s0(s1, s2, 2)
print("S0 of weight 2:", len(s0), "vectors")
big = meta_extend(build_chain(3), certify_meta(s0, s1, s2))
print("T(S0,S1,S2):", len(big), "vectors of length", big.dimension, bool(is_admissible(big)))

# At full scale only the counts are kept. The weight-3 S0 of size 37 and
# the I(11,7) are stand-ins here.
s0 = CountOnly(11, 37, frozenset({3}))
s1 = CountOnly(11, comb(11, 7), frozenset({7}))
tp = meta_extend(build_chain(142), declared_meta(s0, s1, s1))
print("T' length", tp.dimension, "weights", sorted(tp.weights), "size digits", len(str(tp.size)))
