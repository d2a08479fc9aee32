"""
Reproducing the bound tables
============================

Every bound is a plan: a base collection, some recursive steps and a final
extension. The sizes are exact integers, some with tens of thousands of
digits; only the final root is taken in floating decimal.
"""

from capsets.bounds import asymptotic_limit, bound_for_plan, reproduce_tables
from capsets.constructions import plan, plan_count

p = plan(("r", 6), ("f", 11, 7))
n, size = plan_count(p)
print(p.describe())
print(f"dimension {n}, size has {len(str(size))} digits")
print("bound", bound_for_plan(p).bound)

print()
print(f"{'construction':36s} {'dim':>7s} {'bound':>12s} {'printed':>10s}  ok")
for row in reproduce_tables():
    flag = "yes" if row.matches() else "NO"
    print(f"{row.construction:36s} {row.dimension:7d} {row.bound:>12s} {row.expected:>10s}  {flag}")

# The best any I(m, w) could do from the (6, 12, 112) base.
lim = asymptotic_limit(6, 12, 112)
print("\nalpha =", lim.alpha, " limit =", lim.limit)
