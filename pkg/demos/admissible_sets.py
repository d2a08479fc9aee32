"""
Admissible sets: chains, low weight and products
================================================

Pattern vectors in {0,1,2}^m tell the extended product which of A0, A1, A2
goes in each block. Here we build a few admissible sets and watch the
verifiers accept and reject them.
"""

from capsets.gf3 import VectorSet
from capsets.patterns import (
    build_chain,
    build_low_weight,
    is_admissible,
    is_constant_weight,
    is_recursively_admissible,
    product_admissible,
    swap_colors,
)

# A chain: one zero per vector, 1s before it, 2s after it.
chain = build_chain(5)
for v in chain:
    print("".join(map(str, v)))
print("recursively admissible:", bool(is_recursively_admissible(chain)))
print("I(5,4):", bool(is_constant_weight(chain, 5, 4)))

# Plain admissibility is weaker. {01, 10} passes it but has no common zero
# and no {0,2} coordinate, so it cannot drive a recursive step.
s = VectorSet([(0, 1), (1, 0)])
print(is_admissible(s).describe(), "/", is_recursively_admissible(s).describe())

# Low-weight complete sets come from a backtracking search.
i62 = build_low_weight(6, 2)
print(f"I(6,2) has {len(i62)} vectors:", bool(is_constant_weight(i62, 6, 2)))

# Products and colour swaps preserve admissibility.
p = product_admissible(build_chain(3), i62)
print("product length", p.dimension, "size", len(p), bool(is_admissible(p)))
print("swap:", bool(is_admissible(swap_colors(i62))))
