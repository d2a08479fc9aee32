"""Cap-set constructions: the F_3^6 extendable collection, the extended
product, the recursive step, and symbolic build plans.

Large intermediate sets are never materialized. Past the element budget
a construction returns a lazy stand-in that knows its exact size and can
still sample elements and test membership.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from math import comb, prod
from typing import List, Optional, Sequence, Union

from .gf3 import (
    BudgetExceeded,
    CountOnly,
    DimensionError,
    VectorSet,
    element_budget,
    is_cap_set,
    is_extendable,
    neg_sum,
    power,
    size_of,
    weight,
)
from .patterns import NotAdmissibleError, is_admissible, is_recursively_admissible

# Blocks of the 2-(6,3,2) design, one per column of the incidence matrix.
DESIGN_BLOCKS = ((1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
                 (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6))

DESIGN_MATRIX = tuple(
    tuple(int(row in block) for block in DESIGN_BLOCKS) for row in range(1, 7)
)


def validate_design(matrix: Sequence[Sequence[int]]) -> None:
    """Raise ValueError unless every column has three 1s and every pair of
    rows is 1 together in exactly two columns."""
    for col in zip(*matrix):
        if sum(col) != 3:
            raise ValueError(f"column {col} does not have three 1s")
    for r1, r2 in itertools.combinations(matrix, 2):
        if sum(a & b for a, b in zip(r1, r2)) != 2:
            raise ValueError("design rows do not meet in exactly two columns")


validate_design(DESIGN_MATRIX)


class CertificationError(RuntimeError):
    pass


# -- lazy components ---------------------------------------------------------

@dataclass(frozen=True)
class LazyPower(CountOnly):
    """The m-fold direct power of ``base``, not materialized."""

    base: object = None
    m: int = 0

    @classmethod
    def build(cls, base, m: int) -> "LazyPower":
        return cls(base.dimension * m, size_of(base) ** m, None, base, m)


@dataclass(frozen=True)
class LazyExtendedProduct(CountOnly):
    """S(A0, A1, A2) for a pattern set S, not materialized."""

    pattern: object = None
    triple: object = None


Component = Union[VectorSet, CountOnly]


def sample(c: Component, rng: random.Random) -> tuple:
    """A random element of a materialized or lazy set."""
    if isinstance(c, VectorSet):
        return c[rng.randrange(len(c))]
    if isinstance(c, LazyPower):
        return tuple(itertools.chain.from_iterable(sample(c.base, rng) for _ in range(c.m)))
    if isinstance(c, LazyExtendedProduct):
        comps = c.triple.components
        # weight patterns by the size of their block product
        sizes = [prod(size_of(comps[d]) for d in s) for s in c.pattern]
        s = rng.choices(list(c.pattern), weights=sizes)[0] if sum(sizes) else None
        if s is None:
            raise ValueError("cannot sample an empty set")
        return tuple(itertools.chain.from_iterable(sample(comps[d], rng) for d in s))
    raise TypeError(f"cannot sample from {type(c).__name__}")


def contains(c: Component, v: Sequence[int]) -> bool:
    v = tuple(v)
    if len(v) != c.dimension:
        return False
    if isinstance(c, VectorSet):
        return v in c
    if isinstance(c, LazyPower):
        n = c.base.dimension
        return all(contains(c.base, v[i * n:(i + 1) * n]) for i in range(c.m))
    if isinstance(c, LazyExtendedProduct):
        comps = c.triple.components
        n = c.triple.dimension
        blocks = [v[i * n:(i + 1) * n] for i in range(c.pattern.dimension)]
        return any(
            all(contains(comps[d], b) for d, b in zip(s, blocks)) for s in c.pattern
        )
    raise TypeError(f"cannot test membership in {type(c).__name__}")


# -- extendable triples ------------------------------------------------------

@dataclass(frozen=True)
class ExtendableTriple:
    """Cap sets (A0, A1, A2) of one dimension forming an extendable collection.

    ``provenance`` is ``"brute-force"`` when the conditions were checked
    exhaustively and ``"lemma"`` when the triple comes from a recursive
    step too large to check.
    """

    a0: Component
    a1: Component
    a2: Component
    provenance: str = "brute-force"

    @property
    def dimension(self) -> int:
        return self.a0.dimension

    @property
    def components(self):
        return (self.a0, self.a1, self.a2)

    @property
    def sizes(self):
        return tuple(size_of(c) for c in self.components)

    def materialized(self) -> bool:
        return all(isinstance(c, VectorSet) for c in self.components)


def certify_triple(a0: VectorSet, a1: VectorSet, a2: VectorSet) -> ExtendableTriple:
    v = is_extendable(a0, a1, a2)
    if not v:
        raise CertificationError(f"not extendable: {v.describe()}")
    return ExtendableTriple(a0, a1, a2, "brute-force")


def edel6_parts() -> dict:
    """The named pieces D, D', R, R' and A0 of the F_3^6 collection."""
    blocks = {tuple(c - 1 for c in b) for b in DESIGN_BLOCKS}
    d, d_rest, r, r_rest, a0 = [], [], [], [], []
    for v in itertools.product((0, 1, 2), repeat=6):
        w = weight(v)
        sup = tuple(i for i, x in enumerate(v) if x)
        if w == 1:
            a0.append(v)
        elif w == 3:
            (d if sup in blocks else d_rest).append(v)
        elif w == 6:
            (r if v.count(1) % 2 == 0 else r_rest).append(v)
    return {name: VectorSet(vs, 6) for name, vs in
            (("D", d), ("D'", d_rest), ("R", r), ("R'", r_rest), ("A0", a0))}


def build_edel6() -> ExtendableTriple:
    """The extendable collection in F_3^6 with |A0| = 12, |A1| = |A2| = 112.

    A0 is the weight-1 vectors, A1 = D | R and A2 = D' | R, where D has
    support on a design block, D' is the other weight-3 vectors and R is
    the full-weight vectors with an even number of 1s.
    """
    parts = edel6_parts()
    a1 = parts["D"].union(parts["R"])
    a2 = parts["D'"].union(parts["R"])
    return certify_triple(parts["A0"], a1, a2)


def _product_size(pattern, sizes) -> int:
    return sum(prod(sizes[d] for d in s) for s in pattern)


def extended_product(s: VectorSet, triple: ExtendableTriple,
                     budget: Optional[int] = None, count_only: bool = False):
    """The union over s in ``s`` of A_{s_1} x ... x A_{s_m}.

    Block i of each output vector holds coordinates i*n .. (i+1)*n - 1.
    Returns a VectorSet when the result fits the element budget, otherwise
    a lazy stand-in with the exact size.
    """
    v = is_admissible(s)
    if not v:
        raise NotAdmissibleError(v, "pattern set")
    n = triple.dimension
    dim = n * s.dimension
    total = _product_size(s, triple.sizes)
    if count_only or total > element_budget(budget) or not triple.materialized():
        return LazyExtendedProduct(dim, total, None, s, triple)
    comps = triple.components
    out = []
    for pat in s:
        for parts in itertools.product(*(comps[d] for d in pat)):
            out.append(tuple(itertools.chain.from_iterable(parts)))
    return VectorSet._trusted(out, dim)


def recursive_step(s: VectorSet, triple: ExtendableTriple,
                   budget: Optional[int] = None,
                   certify_budget: int = 2 * 10**6) -> ExtendableTriple:
    """(S(A0, A1, A2), A1^m, A2^m) for a recursively admissible S.

    The result is checked with :func:`is_extendable` when all three sets
    are materialized and the check costs at most ``certify_budget`` pair
    lookups; otherwise it is returned with provenance ``"lemma"``.
    """
    v = is_recursively_admissible(s)
    if not v:
        raise NotAdmissibleError(v, "recursive step pattern (needs recursive admissibility)")
    m = s.dimension
    new0 = extended_product(s, triple, budget)
    comps = []
    for c in (triple.a1, triple.a2):
        if isinstance(c, VectorSet):
            try:
                comps.append(power(c, m, budget))
                continue
            except BudgetExceeded:
                pass
        comps.append(LazyPower.build(c, m))
    new1, new2 = comps
    out = ExtendableTriple(new0, new1, new2, "lemma")
    if out.materialized():
        a0, a1, a2 = out.sizes
        cost = a0 * a0 + a0 * a1
        if cost <= certify_budget:
            return certify_triple(new0, new1, new2)
    return out


def sampled_extendable_check(triple: ExtendableTriple, samples: int = 1000,
                             seed: int = 0) -> Optional[tuple]:
    """Spot-check both extendable conditions on random elements.

    Draws x, y from A0 (condition 1) and x from A0, y from A1 (condition 2)
    and tests whether the completing vector lies in the forbidden set.
    Returns the first violating triple found, or None. This is evidence,
    not a proof.
    """
    rng = random.Random(seed)
    a0, a1, a2 = triple.components
    for _ in range(samples):
        x, y = sample(a0, rng), sample(a0, rng)
        z = neg_sum(x, y)
        if contains(a1, z) or contains(a2, z):
            return (x, y, z)
        y = sample(a1, rng)
        z = neg_sum(x, y)
        if contains(a2, z):
            return (x, y, z)
    return None


# -- build plans -------------------------------------------------------------

@dataclass(frozen=True)
class RecursiveStep:
    m: int


@dataclass(frozen=True)
class FinalExtend:
    m: int
    w: int


@dataclass(frozen=True)
class FinalMeta:
    """Final extension by an admissible set given only by its size, length
    and the common weight of its elements."""

    size: int
    m: int
    w: int
    size_expr: str = ""


class PlanError(ValueError):
    pass


@dataclass(frozen=True)
class BuildPlan:
    """Base collection sizes plus a sequence of extension steps.

    ``base`` is ``(n, |A0|, |A1|)`` with |A2| = |A1| assumed.
    """

    base: tuple
    steps: tuple = field(default_factory=tuple)

    def validate(self) -> None:
        if len(self.base) != 3 or any(int(x) < 1 for x in self.base):
            raise PlanError(f"base must be three positive integers, got {self.base}")
        for i, step in enumerate(self.steps):
            if isinstance(step, RecursiveStep):
                if step.m < 2:
                    raise PlanError(f"rstep needs m >= 2, got {step.m}")
            elif isinstance(step, (FinalExtend, FinalMeta)):
                if i != len(self.steps) - 1:
                    raise PlanError("a final step must be last")
                if not 0 <= step.w <= step.m:
                    raise PlanError(f"final step needs 0 <= w <= m, got m={step.m}, w={step.w}")
                if isinstance(step, FinalMeta) and step.size < 0:
                    raise PlanError("final-meta size must be nonnegative")
            else:
                raise PlanError(f"unknown step {step!r}")

    def describe(self) -> str:
        parts = []
        for step in self.steps:
            if isinstance(step, RecursiveStep):
                parts.append(f"~I({step.m},{step.m - 1})")
            elif isinstance(step, FinalExtend):
                parts.append(f"I({step.m},{step.w})")
            else:
                parts.append(f"T'({step.m},{step.w})")
        n, a0, a1 = self.base
        return f"base({n},{a0},{a1})" + "".join(" + " + p for p in parts)


EDEL6_BASE = (6, 12, 112)


def plan(*steps, base=EDEL6_BASE) -> BuildPlan:
    """Shorthand: ``plan(("r", 6), ("f", 11, 7))``."""
    out = []
    for step in steps:
        kind, *args = step
        if kind == "r":
            out.append(RecursiveStep(*args))
        elif kind == "f":
            out.append(FinalExtend(*args))
        elif kind == "meta":
            out.append(FinalMeta(*args))
        else:
            raise PlanError(f"unknown step kind {kind!r}")
    p = BuildPlan(tuple(base), tuple(out))
    p.validate()
    return p


def plan_count(p: BuildPlan):
    """Exact ``(dimension, size)`` of the cap set a plan describes."""
    p.validate()
    n, a0, a1 = p.base
    for step in p.steps:
        if isinstance(step, RecursiveStep):
            m = step.m
            n, a0, a1 = n * m, m * a1 ** (m - 1) * a0, a1 ** m
        elif isinstance(step, FinalExtend):
            m, w = step.m, step.w
            return n * m, comb(m, w) * a0 ** (m - w) * a1 ** w
        else:
            m, w = step.m, step.w
            return n * m, step.size * a0 ** (m - w) * a1 ** w
    return n, a0


_TOKEN = re.compile(r"^(?:C\((\d+),(\d+)\)|(\d+))(?:\^(\d+))?$")


def parse_size_expr(expr: str) -> int:
    """Evaluate a product of integers, ``C(a,b)`` and ``x^y`` tokens."""
    total = 1
    for token in re.split(r"[*·]", expr.replace(" ", "")):
        match = _TOKEN.match(token)
        if not match:
            raise PlanError(f"bad size token {token!r}")
        a, b, num, exp = match.groups()
        base = comb(int(a), int(b)) if a is not None else int(num)
        total *= base ** int(exp) if exp is not None else base
    return total


def parse_plan(text: str) -> BuildPlan:
    base = None
    steps: List = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            if words[0] == "base" and len(words) == 4:
                if base is not None:
                    raise PlanError("duplicate base line")
                base = tuple(int(x) for x in words[1:])
            elif words[0] == "rstep" and len(words) == 2:
                steps.append(RecursiveStep(int(words[1])))
            elif words[0] == "final" and len(words) == 3:
                steps.append(FinalExtend(int(words[1]), int(words[2])))
            elif words[0] == "final-meta" and len(words) == 4:
                steps.append(FinalMeta(parse_size_expr(words[1]), int(words[2]),
                                       int(words[3]), words[1]))
            else:
                raise PlanError(f"unrecognized line {line!r}")
        except ValueError as exc:
            raise PlanError(f"line {lineno}: {exc}") from None
    if base is None:
        raise PlanError("plan has no base line")
    p = BuildPlan(base, tuple(steps))
    p.validate()
    return p


def format_plan(p: BuildPlan) -> str:
    lines = ["base {} {} {}".format(*p.base)]
    for step in p.steps:
        if isinstance(step, RecursiveStep):
            lines.append(f"rstep {step.m}")
        elif isinstance(step, FinalExtend):
            lines.append(f"final {step.m} {step.w}")
        else:
            lines.append(f"final-meta {step.size_expr or step.size} {step.m} {step.w}")
    return "\n".join(lines) + "\n"


def materialize_plan(p: BuildPlan, triple: ExtendableTriple, patterns: Sequence[VectorSet],
                     budget: Optional[int] = None):
    """Run a plan on concrete sets: one pattern set per step.

    Returns the final cap set (or the A0 of the last triple when the plan
    has no final step).
    """
    p.validate()
    if len(patterns) != len(p.steps):
        raise PlanError("need one pattern set per step")
    if triple.sizes[1] != triple.sizes[2]:
        raise DimensionError("plans assume |A1| = |A2|")
    for step, s in zip(p.steps, patterns):
        if isinstance(step, RecursiveStep):
            triple = recursive_step(s, triple, budget)
        else:
            return extended_product(s, triple, budget)
    return triple.a0
