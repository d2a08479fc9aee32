"""Vectors over F_3, vector sets, and the cap-set / extendable verifiers.

Vectors are plain tuples of ints in {0, 1, 2}. Tuples compare
lexicographically, which gives every set a canonical iteration order.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

Vector = tuple

DEFAULT_ELEMENT_BUDGET = 10**6
BUDGET_ENV_VAR = "CAPSETS_ELEMENT_BUDGET"


class DimensionError(ValueError):
    """Vectors or sets of incompatible lengths were combined."""


class BudgetExceeded(RuntimeError):
    """A materialization would create more elements than the budget allows."""

    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(
            f"refusing to materialize {count} elements (budget {budget})"
        )


def element_budget(budget: Optional[int] = None) -> int:
    """Resolve an explicit budget, else the environment override, else the default."""
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_ELEMENT_BUDGET


def weight(v: Sequence[int]) -> int:
    return sum(1 for d in v if d)


def support(v: Sequence[int]) -> tuple:
    """Zero-based indices of the nonzero digits."""
    return tuple(i for i, d in enumerate(v) if d)


def add_mod3(x: Sequence[int], y: Sequence[int]) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return tuple((a + b) % 3 for a, b in zip(x, y))


def neg_sum(x: Sequence[int], y: Sequence[int]) -> Vector:
    """The unique z with x + y + z = 0."""
    return tuple((-a - b) % 3 for a, b in zip(x, y))


def _as_vector(v) -> Vector:
    t = tuple(int(d) for d in v)
    for d in t:
        if d not in (0, 1, 2):
            raise ValueError(f"digit {d} not in {{0,1,2}}: {t}")
    return t


class VectorSet:
    """An immutable finite set of equal-length ternary vectors.

    Iteration is in lexicographic order. Duplicates in the input are an
    error rather than silently merged, since they usually mean a corrupt
    certificate file.
    """

    __slots__ = ("dimension", "_elements", "_index")

    def __init__(self, elements: Iterable = (), dimension: Optional[int] = None):
        elems = [_as_vector(v) for v in elements]
        if dimension is None:
            if not elems:
                raise DimensionError("dimension required for an empty set")
            dimension = len(elems[0])
        for v in elems:
            if len(v) != dimension:
                raise DimensionError(
                    f"vector {v} has length {len(v)}, expected {dimension}"
                )
        index = frozenset(elems)
        if len(index) != len(elems):
            raise ValueError("duplicate vectors in set")
        self.dimension = dimension
        self._elements = tuple(sorted(index))
        self._index = index

    @classmethod
    def _trusted(cls, elements: Iterable[Vector], dimension: int) -> "VectorSet":
        # skips digit validation; callers guarantee well-formed distinct tuples
        obj = cls.__new__(cls)
        index = frozenset(elements)
        obj.dimension = dimension
        obj._elements = tuple(sorted(index))
        obj._index = index
        return obj

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self._elements)

    def __contains__(self, v) -> bool:
        return tuple(v) in self._index

    def __getitem__(self, i):
        return self._elements[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorSet):
            return NotImplemented
        return self.dimension == other.dimension and self._index == other._index

    def __hash__(self) -> int:
        return hash((self.dimension, self._index))

    def __repr__(self) -> str:
        if len(self) <= 6:
            body = ", ".join("".join(map(str, v)) for v in self)
        else:
            body = f"{len(self)} vectors"
        return f"{type(self).__name__}(n={self.dimension}: {body})"

    def union(self, other: "VectorSet") -> "VectorSet":
        _check_dims(self, other)
        return VectorSet._trusted(self._index | other._index, self.dimension)

    def intersection(self, other: "VectorSet") -> "VectorSet":
        _check_dims(self, other)
        return VectorSet._trusted(self._index & other._index, self.dimension)

    def isdisjoint(self, other: "VectorSet") -> bool:
        return self._index.isdisjoint(other._index)

    def map(self, fn) -> "VectorSet":
        """Apply ``fn`` to every vector; the image must keep the dimension."""
        return VectorSet((fn(v) for v in self), self.dimension)

    def permute(self, perm: Sequence[int]) -> "VectorSet":
        """Reorder coordinates: new coordinate i takes old coordinate perm[i]."""
        return VectorSet._trusted(
            (tuple(v[p] for p in perm) for v in self), self.dimension
        )

    def weights(self) -> frozenset:
        return frozenset(weight(v) for v in self)


@dataclass(frozen=True)
class CountOnly:
    """Stand-in for a set too large to materialize: its dimension and size.

    ``weights`` is the set of element weights when it can be determined
    without materializing, else None.
    """

    dimension: int
    size: int
    weights: Optional[frozenset] = None

    def __len__(self) -> int:
        # len() cannot return huge ints; use .size for exact counts
        if self.size > 2**62:
            raise OverflowError("use .size for count-only sets")
        return self.size


def size_of(s) -> int:
    return s.size if isinstance(s, CountOnly) else len(s)


def _check_dims(*sets) -> None:
    dims = {s.dimension for s in sets}
    if len(dims) > 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verifier. Truthy iff the check passed.

    On failure ``witness`` holds the offending vectors and ``condition``
    names the violated requirement.
    """

    ok: bool
    condition: Optional[str] = None
    witness: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        vecs = " ".join("".join(map(str, v)) for v in self.witness)
        text = f"fail [{self.condition}]"
        if vecs:
            text += f": {vecs}"
        if self.detail:
            text += f" ({self.detail})"
        return text


PASS = Verdict(True)


def is_cap_set(s: VectorSet) -> Verdict:
    """Check that no three elements, not all equal, sum to zero.

    For each unordered pair x < y the only possible third element is
    -(x + y); two equal summands force the third equal in characteristic 3,
    so pairs of distinct elements are all that needs checking.
    """
    elems = s._elements
    index = s._index
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            z = neg_sum(x, y)
            if z in index:
                return Verdict(False, "cap", tuple(sorted((x, y, z))))
    return PASS


def is_cap_set_naive(s: VectorSet) -> Verdict:
    """Triple-loop reference check, O(|S|^3). Used as a test oracle."""
    elems = list(s)
    for x, y, z in itertools.combinations(elems, 3):
        if all((a + b + c) % 3 == 0 for a, b, c in zip(x, y, z)):
            return Verdict(False, "cap", (x, y, z))
    return PASS


def is_extendable(a0: VectorSet, a1: VectorSet, a2: VectorSet) -> Verdict:
    """Check the two sum-avoidance conditions for a triple of cap sets.

    Condition 1: x, y in a0 (x = y allowed) and z in a1 | a2 never sum to 0.
    Condition 2: x in a0, y in a1, z in a2 never sum to 0.
    Each set is first checked to be a cap set on its own.
    """
    _check_dims(a0, a1, a2)
    for label, s in (("a0", a0), ("a1", a1), ("a2", a2)):
        v = is_cap_set(s)
        if not v:
            return Verdict(False, f"not-cap:{label}", v.witness)
    outer = a1._index | a2._index
    elems = a0._elements
    for i, x in enumerate(elems):
        for y in elems[i:]:
            z = neg_sum(x, y)
            if z in outer:
                return Verdict(False, "extendable-1", (x, y, z))
    for x in elems:
        for y in a1:
            z = neg_sum(x, y)
            if z in a2._index:
                return Verdict(False, "extendable-2", (x, y, z))
    return PASS


def direct_product(a: VectorSet, b: VectorSet) -> VectorSet:
    """All concatenations (x, y) with x in a and y in b."""
    dim = a.dimension + b.dimension
    return VectorSet._trusted((x + y for x in a for y in b), dim)


def power(a: VectorSet, m: int, budget: Optional[int] = None) -> VectorSet:
    """The m-fold direct product of ``a`` with itself.

    Raises BudgetExceeded, carrying the exact element count, when
    ``len(a) ** m`` exceeds the element budget.
    """
    if m < 1:
        raise ValueError("power requires m >= 1")
    count = len(a) ** m
    limit = element_budget(budget)
    if count > limit:
        raise BudgetExceeded(count, limit)
    out = a
    for _ in range(m - 1):
        out = direct_product(out, a)
    return out


def all_vectors(n: int) -> Iterator[Vector]:
    return itertools.product((0, 1, 2), repeat=n)


def max_cap_size(n: int) -> int:
    """Size of the largest cap set in F_3^n by exhaustive backtracking.

    Only practical for n <= 3.
    """
    points = list(all_vectors(n))
    best = 0

    def extend(start: int, chosen: list, forbidden: set) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + len(points) - start <= best:
            return
        for i in range(start, len(points)):
            p = points[i]
            if p in forbidden:
                continue
            new_forbidden = {neg_sum(p, q) for q in chosen}
            chosen.append(p)
            extend(i + 1, chosen, forbidden | new_forbidden)
            chosen.pop()

    extend(0, [], set())
    return best
