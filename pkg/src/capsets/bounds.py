"""Exact cap-set sizes and the growth constants they imply.

Sizes stay exact Python integers throughout. A size s in dimension n
gives the constant c = s**(1/n), computed with ``decimal`` in log space
and reported truncated (not rounded) to a fixed number of significant
digits, so "2.218021..." reads as the true leading digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Union

from .constructions import EDEL6_BASE, BuildPlan, parse_size_expr, plan, plan_count

DEFAULT_DIGITS = 10
_GUARD = 25


def _ln_int(size: int, prec: int) -> Decimal:
    """ln(size) to ``prec`` digits without converting the whole integer.

    Splits size = top * 2**shift with ``top`` holding enough leading bits
    for the requested precision.
    """
    keep = int(prec * 3.33) + 64
    shift = max(0, size.bit_length() - keep)
    top = size >> shift
    with localcontext() as ctx:
        ctx.prec = prec + 10
        # the dropped low bits change ln by less than 2**-(keep-1)
        value = Decimal(top).ln() + shift * Decimal(2).ln()
    return +value


def root_value(size: int, n: int, prec: int = 40) -> Decimal:
    """size ** (1/n) as a Decimal with ``prec`` significant digits."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if n < 1:
        raise ValueError("dimension must be positive")
    with localcontext() as ctx:
        ctx.prec = prec + 10
        value = (_ln_int(size, prec + 10) / n).exp()
        ctx.prec = prec
        return +value


def nth_root_bound(size: int, n: int, digits: int = DEFAULT_DIGITS) -> str:
    """size ** (1/n) truncated to ``digits`` significant digits.

    When the approximation lands within rounding noise of a truncation
    boundary (as for exact powers), the digit is settled by comparing
    exact integer powers.
    """
    if size < 1:
        raise ValueError("size must be at least 1 (no bound from an empty set)")
    c = root_value(size, n, digits + _GUARD)
    decimals = digits - 1 - c.adjusted()
    with localcontext() as ctx:
        ctx.prec = digits + _GUARD + 10
        scaled = c.scaleb(decimals)
        whole = int(scaled.to_integral_value(rounding=ROUND_FLOOR))
        frac = scaled - whole
        near = Decimal(10) ** (-(_GUARD - 8))
        if frac < near or frac > 1 - near:
            # settle exactly: whole**n <= size * 10**(decimals*n)
            lhs_scale = 10 ** (decimals * n) if decimals >= 0 else None
            def at_most(t: int) -> bool:
                if lhs_scale is not None:
                    return t ** n <= size * lhs_scale
                return t ** n * 10 ** (-decimals * n) <= size
            if frac > 1 - near and at_most(whole + 1):
                whole += 1
            elif not at_most(whole):
                whole -= 1
        result = Decimal(whole).scaleb(-decimals)
    return format(result, "f")


@dataclass(frozen=True)
class BoundReport:
    dimension: int
    size: int = field(repr=False)  # may be too long for str()
    bound: str
    provenance: str = ""

    @property
    def value(self) -> Decimal:
        return Decimal(self.bound)

    @property
    def size_digits(self) -> int:
        return decimal_digits(self.size)


def decimal_digits(x: int) -> int:
    """Number of decimal digits of a nonnegative integer, without str()."""
    if x < 10:
        return 1
    k = int(x.bit_length() * 0.30102999566398120)
    # k is within one of the answer
    if x >= 10 ** k:
        k += 1
    if x < 10 ** (k - 1):
        k -= 1
    return k


def bound_for_plan(p: BuildPlan, digits: int = DEFAULT_DIGITS) -> BoundReport:
    n, size = plan_count(p)
    return BoundReport(n, size, nth_root_bound(size, n, digits), p.describe())


@dataclass(frozen=True)
class LimitReport:
    alpha: Fraction
    limit: str
    dimension: int
    a0: int
    a1: int


def asymptotic_limit(n: int, a0: int, a1: int, digits: int = DEFAULT_DIGITS) -> LimitReport:
    """Best constant reachable from a collection of sizes (a0, a1, a1) in
    dimension n using I(m, alpha*m) for large m: (a0 + a1) ** (1/n), with
    alpha = a1 / (a0 + a1)."""
    if a0 < 1 or a1 < 1:
        raise ValueError("a0 and a1 must be positive")
    return LimitReport(Fraction(a1, a0 + a1), nth_root_bound(a0 + a1, n, digits), n, a0, a1)


def _dec(x) -> Decimal:
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    return Decimal(x)


def entropy(x, prec: int = 40) -> Decimal:
    """Binary entropy -x log2 x - (1-x) log2 (1-x) for 0 < x < 1."""
    with localcontext() as ctx:
        ctx.prec = prec + 10
        x = _dec(x)
        if not 0 < x < 1:
            raise ValueError("entropy is defined here only for 0 < x < 1")
        y = 1 - x
        value = -(x * x.ln() + y * y.ln()) / Decimal(2).ln()
        ctx.prec = prec
        return +value


def limit_objective(x, a0: int, a1: int, prec: int = 40) -> Decimal:
    """x ln(a1/a0) - x ln x - (1-x) ln(1-x): the log growth per coordinate
    of C(m, xm) a0^(m - xm) a1^(xm), up to the a0 term."""
    with localcontext() as ctx:
        ctx.prec = prec
        x = _dec(x)
        y = 1 - x
        return x * (Decimal(a1) / a0).ln() - x * x.ln() - y * y.ln()


def limit_objective_slope(x, a0: int, a1: int, prec: int = 40) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        x = _dec(x)
        return (Decimal(a1) / a0).ln() + (1 - x).ln() - x.ln()


def padded_bound(size: int, n: int, m: int, prec: int = 40) -> Decimal:
    """Growth constant in dimension m from k = m // n direct copies of a
    cap of the given size in F_3^n (the leftover m - kn coordinates are
    padded with zeros)."""
    if m < n:
        raise ValueError("need m >= n")
    k = m // n
    return root_value(size ** k, m, prec)


def padded_bound_formula(size: int, n: int, m: int, prec: int = 40) -> Decimal:
    """c ** (1 - r/m) with c = size ** (1/n) and r = m mod n."""
    r = m % n
    with localcontext() as ctx:
        ctx.prec = prec + 10
        c = root_value(size, n, prec + 10)
        value = (c.ln() * (1 - Decimal(r) / m)).exp()
        ctx.prec = prec
        return +value


@dataclass(frozen=True)
class TableRow:
    """One printed bound with the plan that reproduces it.

    ``places`` is None for rows printed to full precision (compared at
    relative tolerance 1e-6) or the number of printed decimals for rows
    shown only to a few digits (compared by truncated prefix).
    """

    table: str
    construction: str
    expected: str
    report: Union[BoundReport, LimitReport]
    places: Optional[int] = None

    @property
    def dimension(self):
        return self.report.dimension

    @property
    def bound(self) -> str:
        r = self.report
        return r.limit if isinstance(r, LimitReport) else r.bound

    def matches(self) -> bool:
        got = Decimal(self.bound)
        want = Decimal(self.expected)
        if self.places is None:
            return abs(got - want) <= Decimal("1e-6") * want
        return truncate(got, self.places) == want


def truncate(x: Decimal, places: int) -> Decimal:
    return x.quantize(Decimal(1).scaleb(-places), rounding=ROUND_FLOOR)


def single_cap_plan(n: int, size: int) -> BuildPlan:
    """A plan with no steps: the bound of one cap of ``size`` in F_3^n."""
    return BuildPlan((n, size, size), ())


def theorem_meta_plan() -> BuildPlan:
    size_expr = "142*37*C(11,7)^141"
    return plan(("r", 6), ("meta", parse_size_expr(size_expr), 1562, 990, size_expr))


# (construction label, expected, plan) rows of the summary table
def _summary_rows():
    return [
        ("{0,1}^n", "2", single_cap_plan(1, 2)),
        ("maximal cap of size 20 in F_3^4", "2.114742", single_cap_plan(4, 20)),
        ("maximal cap of size 45 in F_3^5", "2.141127", single_cap_plan(5, 45)),
        ("maximal cap of size 112 in F_3^6", "2.195514", single_cap_plan(6, 112)),
        ("~I(25,24) and I(90,89)", "2.210147", plan(("r", 25), ("f", 90, 89))),
        ("~I(8,7) and I(10,5)", "2.217389", plan(("r", 8), ("f", 10, 5))),
        ("~I(7,6) and I(10,6)", "2.2175608", plan(("r", 7), ("f", 10, 6))),
        ("~I(7,6) and I(11,6)", "2.217950", plan(("r", 7), ("f", 11, 6))),
        ("~I(6,5) and I(11,7)", "2.217981", plan(("r", 6), ("f", 11, 7))),
        ("meta-extendable collection", "2.218021", theorem_meta_plan()),
    ]


def _limit_rows():
    return [
        ("~I(5,4) and I(17,11)", "2.220", plan(("r", 5), ("f", 17, 11))),
        ("~I(3,2) and I(54,41)", "2.225", plan(("r", 3), ("f", 54, 41))),
        ("I(311,281)", "2.230", plan(("f", 311, 281))),
        ("I(22948,20727)", "2.233", plan(("f", 22948, 20727))),
    ]


def reproduce_tables(digits: int = DEFAULT_DIGITS) -> List[TableRow]:
    """Recompute every row of the summary and limit tables."""
    rows = []
    for label, expected, p in _summary_rows():
        rows.append(TableRow("summary", label, expected, bound_for_plan(p, digits)))
    for label, expected, p in _limit_rows():
        rows.append(TableRow("limit", label, expected, bound_for_plan(p, digits), places=3))
    n, a0, a1 = EDEL6_BASE
    rows.append(TableRow("limit", "I(m, 28m/31) for large m", "2.233076",
                         asymptotic_limit(n, a0, a1, digits)))
    return rows

