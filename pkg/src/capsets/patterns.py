"""Admissible sets of pattern vectors in {0,1,2}^m.

Verifiers for plain, recursive, constant-weight and meta admissibility,
the chain and low-weight builders, direct products, colour swapping, the
meta extension, and the backtracking searches used to find new sets.

The triple conditions are evaluated on bit masks. Each vector becomes
three masks (zero, one and two coordinates) packed into uint64 words, so a
triple check is a handful of AND/OR operations broadcast with numpy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, prod
from typing import Optional, Union

import numpy as np

from .gf3 import (
    PASS,
    CountOnly,
    DimensionError,
    Verdict,
    VectorSet,
    element_budget,
    size_of,
    weight,
)

# Max size of a broadcast block (pairs x words) before chunking.
_BLOCK = 1 << 21


class NotAdmissibleError(ValueError):
    def __init__(self, verdict: Verdict, what: str = "input"):
        self.verdict = verdict
        super().__init__(f"{what} is not admissible: {verdict.describe()}")


class SearchBudgetExceeded(RuntimeError):
    """A backtracking search hit its node budget before finishing."""


class NotFoundError(LookupError):
    pass


class PatternSet(VectorSet):
    """A VectorSet of pattern vectors, optionally tagged with a verified role.

    Roles are ``"admissible"``, ``"recursively_admissible"``,
    ``"constant_weight(m,w)"`` and ``"meta_component"``. Use
    :func:`declare` to attach one; it runs the matching verifier first.
    """

    __slots__ = ("role",)

    def __init__(self, elements=(), dimension=None, role=None):
        super().__init__(elements, dimension)
        self.role = role

    @classmethod
    def _trusted(cls, elements, dimension, role=None):
        obj = super()._trusted(elements, dimension)
        obj.role = role
        return obj

    @classmethod
    def of(cls, s: VectorSet, role=None) -> "PatternSet":
        return cls._trusted(s, s.dimension, role)


def declare(s: VectorSet, role: str) -> PatternSet:
    """Return ``s`` tagged with ``role`` after the matching verifier passes."""
    if role == "admissible":
        v = is_admissible(s)
    elif role == "recursively_admissible":
        v = is_recursively_admissible(s)
    elif role.startswith("constant_weight("):
        m, w = (int(x) for x in role[len("constant_weight("):-1].split(","))
        v = is_constant_weight(s, m, w)
    elif role == "meta_component":
        v = is_admissible(s)
    else:
        raise ValueError(f"unknown role {role!r}")
    if not v:
        raise NotAdmissibleError(v, f"set declared {role}")
    return PatternSet.of(s, role)


# -- bit masks ---------------------------------------------------------------

def _masks(vectors, m: int):
    """Zero/one/two masks of shape (N, words) as uint64."""
    words = max(1, (m + 63) // 64)
    arr = np.asarray(list(vectors), dtype=np.uint8).reshape(-1, m)
    out = []
    for digit in (0, 1, 2):
        bits = (arr == digit)
        pad = words * 64 - m
        if pad:
            bits = np.concatenate([bits, np.zeros((bits.shape[0], pad), bool)], axis=1)
        packed = np.packbits(bits.reshape(bits.shape[0], words, 64), axis=2, bitorder="little")
        out.append(packed.view(np.uint64).reshape(bits.shape[0], words))
    return tuple(out)


def _triple_ok(a, b, c):
    """Broadcast test: some coordinate holds {0,1,2}, {0,0,1} or {0,0,2}.

    ``a``, ``b``, ``c`` are (zero, one, two) mask triples whose arrays
    broadcast against each other; the result drops the word axis.
    """
    za, oa, ta = a
    zb, ob, tb = b
    zc, oc, tc = c
    nza, nzb, nzc = oa | ta, ob | tb, oc | tc
    good = (za & zb & nzc) | (za & zc & nzb) | (zb & zc & nza)
    good = good | (za & ((ob & tc) | (tb & oc)))
    good = good | (zb & ((oa & tc) | (ta & oc)))
    good = good | (zc & ((oa & tb) | (ta & ob)))
    return np.any(good != 0, axis=-1)



# -- verifiers ---------------------------------------------------------------

def is_admissible(s: VectorSet) -> Verdict:
    """Check the pair and triple conditions of an admissible set.

    Pairs: for distinct s, s' there are coordinates i, j with
    s_i = 0 != s'_i and s_j != 0 = s'_j. Triples: for distinct s, s', s''
    some coordinate carries {0,1,2}, {0,0,1} or {0,0,2}. The first failure
    in lexicographic order of the elements is reported.
    """
    elems = list(s)
    n = len(elems)
    if n <= 1:
        return PASS
    z, o, t = _masks(elems, s.dimension)
    nz = o | t
    for i in range(n - 1):
        lo = np.any((z[i] & nz[i + 1:]) != 0, axis=-1)
        hi = np.any((nz[i] & z[i + 1:]) != 0, axis=-1)
        bad = np.flatnonzero(~(lo & hi))
        if bad.size:
            j = i + 1 + int(bad[0])
            return Verdict(False, "pair", (elems[i], elems[j]))
    masks = (z, o, t)
    for i in range(n - 2):
        rest = np.arange(i + 1, n)
        a = tuple(arr[i][None, None, :] for arr in masks)
        step = max(1, _BLOCK // (len(rest) * z.shape[1]))
        for start in range(0, len(rest), step):
            rows = rest[start:start + step]
            b = tuple(arr[rows][:, None, :] for arr in masks)
            c = tuple(arr[rest][None, :, :] for arr in masks)
            ok = _triple_ok(a, b, c)
            ok |= rows[:, None] >= rest[None, :]
            bad = np.argwhere(~ok)
            if bad.size:
                j, k = int(rows[bad[0][0]]), int(rest[bad[0][1]])
                return Verdict(False, "triple", (elems[i], elems[j], elems[k]))
    return PASS


def is_admissible_naive(s: VectorSet) -> Verdict:
    """Direct transcription of the definition; a test oracle."""
    elems = list(s)
    for x, y in itertools.combinations(elems, 2):
        if not (any(a == 0 != b for a, b in zip(x, y))
                and any(a != 0 == b for a, b in zip(x, y))):
            return Verdict(False, "pair", (x, y))
    for x, y, z in itertools.combinations(elems, 3):
        hit = False
        for col in zip(x, y, z):
            srt = sorted(col)
            if srt in ([0, 1, 2], [0, 0, 1], [0, 0, 2]):
                hit = True
                break
        if not hit:
            return Verdict(False, "triple", (x, y, z))
    return PASS


def is_recursively_admissible(s: VectorSet) -> Verdict:
    """Admissible, at least two elements, and every pair has a common zero
    or a pair of coordinates showing {0,1} and {0,2}."""
    v = is_admissible(s)
    if not v:
        return v
    if len(s) < 2:
        return Verdict(False, "size", tuple(s), "needs at least 2 elements")
    elems = list(s)
    for x, y in itertools.combinations(elems, 2):
        if any(a == 0 == b for a, b in zip(x, y)):
            continue
        has01 = any({a, b} == {0, 1} for a, b in zip(x, y))
        has02 = any({a, b} == {0, 2} for a, b in zip(x, y))
        if not (has01 and has02):
            return Verdict(False, "recursive-pair", (x, y))
    return PASS


def is_constant_weight(s: VectorSet, m: int, w: int) -> Verdict:
    """Check that ``s`` is an I(m, w): admissible, C(m, w) vectors of weight
    w, with pairwise distinct supports."""
    if not 0 <= w <= m:
        raise ValueError(f"need 0 <= w <= m, got m={m}, w={w}")
    if s.dimension != m:
        return Verdict(False, "length", (), f"vectors have length {s.dimension}, not {m}")
    for v in s:
        if weight(v) != w:
            return Verdict(False, "weight", (v,), f"weight {weight(v)} != {w}")
    if len(s) != comb(m, w):
        return Verdict(False, "count", (), f"{len(s)} vectors, expected C({m},{w})={comb(m, w)}")
    seen = {}
    for v in s:
        sup = tuple(i for i, d in enumerate(v) if d)
        if sup in seen:
            return Verdict(False, "support", (seen[sup], v), "repeated support")
        seen[sup] = v
    return is_admissible(s)


def is_meta_extendable(s0: VectorSet, s1: VectorSet, s2: VectorSet) -> Verdict:
    """Check the three meta-extendable conditions.

    (1) every weight in s0 is below every weight in s1 | s2;
    (2) x, y in s0 (x = y allowed), z in s1 | s2 has a good coordinate;
    (3) x in s0, y in s1, z in s2 has a good coordinate.
    A good coordinate shows {0,1,2}, {0,0,1} or {0,0,2}.
    """
    dims = {s0.dimension, s1.dimension, s2.dimension}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")
    for label, comp in (("s0", s0), ("s1", s1), ("s2", s2)):
        v = is_admissible(comp)
        if not v:
            return Verdict(False, f"not-admissible:{label}", v.witness)
    if not len(s0) or not (len(s1) + len(s2)):
        return PASS
    outer = s1.union(s2)
    top = max(s0, key=weight)
    bottom = min(outer, key=weight)
    if weight(top) >= weight(bottom):
        return Verdict(False, "meta-1", (top, bottom), "weight of s0 element not below s1/s2 element")
    m = s0.dimension
    e0, eo = list(s0), list(outer)
    m0, mo = _masks(e0, m), _masks(eo, m)
    for i in range(len(e0)):
        a = tuple(arr[i][None, None, :] for arr in m0)
        b = tuple(arr[i:][:, None, :] for arr in m0)
        c = tuple(arr[None, :, :] for arr in mo)
        bad = np.argwhere(~_triple_ok(a, b, c))
        if bad.size:
            j, k = i + int(bad[0][0]), int(bad[0][1])
            return Verdict(False, "meta-2", (e0[i], e0[j], eo[k]))
    if len(s1) and len(s2):
        e1, e2 = list(s1), list(s2)
        m1, m2 = _masks(e1, m), _masks(e2, m)
        b = tuple(arr[:, None, :] for arr in m1)
        c = tuple(arr[None, :, :] for arr in m2)
        for i in range(len(e0)):
            a = tuple(arr[i][None, None, :] for arr in m0)
            bad = np.argwhere(~_triple_ok(a, b, c))
            if bad.size:
                j, k = int(bad[0][0]), int(bad[0][1])
                return Verdict(False, "meta-3", (e0[i], e1[j], e2[k]))
    return PASS


# -- builders ----------------------------------------------------------------

def build_chain(m: int) -> PatternSet:
    """The recursively admissible set with one zero per vector: entries
    before the zero are 1 and entries after it are 2."""
    if m < 2:
        raise ValueError("build_chain requires m >= 2")
    vecs = [tuple([1] * k + [0] + [2] * (m - k - 1)) for k in range(m)]
    return PatternSet._trusted(vecs, m, "recursively_admissible")


def swap_colors(s: VectorSet) -> PatternSet:
    """Exchange the digits 1 and 2 in every vector."""
    swap = (0, 2, 1)
    return PatternSet._trusted(
        (tuple(swap[d] for d in v) for v in s), s.dimension, getattr(s, "role", None)
    )


def product_admissible(s: VectorSet, t: VectorSet) -> PatternSet:
    """Direct product of two admissible sets (concatenated vectors)."""
    for label, comp in (("left factor", s), ("right factor", t)):
        v = is_admissible(comp)
        if not v:
            raise NotAdmissibleError(v, label)
    return PatternSet._trusted(
        (x + y for x in s for y in t), s.dimension + t.dimension, "admissible"
    )


def _critical_triples(supports):
    """Support triples i < j < k with no coordinate in exactly one support.

    The third support must contain the symmetric difference of the first
    two and lie inside their union, so it is enumerated from the
    intersection directly. Yields (i, j, k) in lexicographic order.
    """
    index = {sup: i for i, sup in enumerate(supports)}
    w = len(supports[0]) if supports else 0
    for i, si in enumerate(supports):
        seti = set(si)
        found = []
        for j in range(i + 1, len(supports)):
            sj = supports[j]
            setj = set(sj)
            sym = seti ^ setj
            need = w - len(sym)
            if need < 0:
                continue
            inter = sorted(seti & setj)
            ks = []
            for extra in itertools.combinations(inter, need):
                k = index.get(tuple(sorted(sym | set(extra))))
                if k is not None and k > j:
                    ks.append(k)
            for k in sorted(ks):
                found.append((i, j, k))
        yield from found


def search_constant_weight(m: int, w: int, node_budget: Optional[int] = None):
    """Backtracking search for an I(m, w).

    Supports are taken in lexicographic order and each is given a 1/2
    colouring; only the triples with no coordinate in exactly one support
    can fail, and they need a coordinate shared by exactly two of them
    with different colours. The first support's first cell is fixed to 1
    since swapping colours globally preserves admissibility.

    Returns the set, or None when the search space is exhausted (no I(m, w)
    exists). Raises SearchBudgetExceeded past ``node_budget`` nodes.
    """
    if not 1 <= w <= m:
        raise ValueError(f"need 1 <= w <= m, got m={m}, w={w}")
    supports = list(itertools.combinations(range(m), w))
    smask = [sum(1 << c for c in sup) for sup in supports]
    checks = [[] for _ in supports]
    for i, j, k in _critical_triples(supports):
        checks[k].append((i, j))
    colorings = []
    for sup in supports:
        opts = []
        for r in range(1 << w):
            two = sum(1 << c for bit, c in enumerate(sup) if r >> bit & 1)
            opts.append(two)
        colorings.append(opts)
    colorings[0] = [t for t in colorings[0] if not t >> supports[0][0] & 1]

    two = [0] * len(supports)
    nodes = 0

    def diff(i, j):
        si, sj = smask[i], smask[j]
        ti, tj = two[i], two[j]
        return ((si & ~ti) & tj | ti & (sj & ~tj))

    def consistent(k):
        sk = smask[k]
        for i, j in checks[k]:
            if diff(i, j) & ~sk:
                continue
            if diff(i, k) & ~smask[j]:
                continue
            if diff(j, k) & ~smask[i]:
                continue
            return False
        return True

    def place(k):
        nonlocal nodes
        if k == len(supports):
            return True
        for t in colorings[k]:
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise SearchBudgetExceeded(f"I({m},{w}) search exceeded {node_budget} nodes")
            two[k] = t
            if consistent(k) and place(k + 1):
                return True
        return False

    if not place(0):
        return None
    vecs = []
    for sup, t in zip(supports, two):
        v = [0] * m
        for c in sup:
            v[c] = 2 if t >> c & 1 else 1
        vecs.append(tuple(v))
    return PatternSet._trusted(vecs, m, f"constant_weight({m},{w})")


def build_low_weight(m: int, w: int, node_budget: Optional[int] = 10**7) -> PatternSet:
    """An I(m, w) for w in {2, 3}, found by backtracking and verified."""
    if w not in (2, 3):
        raise ValueError("build_low_weight handles w = 2 or 3")
    if m <= w:
        raise ValueError(f"need m > w, got m={m}, w={w}")
    found = search_constant_weight(m, w, node_budget)
    if found is None:
        raise NotFoundError(f"no I({m},{w}) exists according to exhaustive search")
    return declare(found, f"constant_weight({m},{w})")


# -- meta construction -------------------------------------------------------

Component = Union[VectorSet, CountOnly]


@dataclass(frozen=True)
class MetaTriple:
    """Three pattern sets certified meta-extendable.

    ``provenance`` is ``"verified"`` when :func:`is_meta_extendable` passed,
    or ``"declared"`` for count-only stand-ins whose certificates are not
    available locally.
    """

    s0: Component
    s1: Component
    s2: Component
    provenance: str = "verified"

    @property
    def length(self) -> int:
        return self.s0.dimension

    def materialized(self) -> bool:
        return not any(isinstance(x, CountOnly) for x in (self.s0, self.s1, self.s2))


def certify_meta(s0: VectorSet, s1: VectorSet, s2: VectorSet) -> MetaTriple:
    v = is_meta_extendable(s0, s1, s2)
    if not v:
        raise NotAdmissibleError(v, "meta triple")
    return MetaTriple(s0, s1, s2, "verified")


def declared_meta(s0: Component, s1: Component, s2: Component) -> MetaTriple:
    """A meta triple asserted valid without a local check, e.g. sized
    stand-ins for externally published certificates."""
    dims = {x.dimension for x in (s0, s1, s2)}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")
    return MetaTriple(s0, s1, s2, "declared")


def _weights(c: Component):
    if isinstance(c, CountOnly):
        return c.weights
    return c.weights()


def meta_extend(t: VectorSet, triple: MetaTriple, budget: Optional[int] = None,
                count_only: bool = False):
    """Union over t in ``t`` of the block products S_{t_1} x ... x S_{t_r}.

    Returns a PatternSet when the result fits the element budget and every
    component is materialized, otherwise a CountOnly carrying the exact
    size, the length r*m and (when computable) the set of element weights.
    """
    v = is_admissible(t)
    if not v:
        raise NotAdmissibleError(v, "outer set")
    comps = (triple.s0, triple.s1, triple.s2)
    sizes = [size_of(c) for c in comps]
    length = t.dimension * triple.length
    total = sum(prod(sizes[d] for d in vec) for vec in t)
    limit = element_budget(budget)
    if count_only or total > limit or not triple.materialized():
        cw = [_weights(c) for c in comps]
        weights = None
        if all(x is not None for x in cw):
            weights = set()
            for vec in t:
                acc = {0}
                for d in vec:
                    acc = {a + b for a in acc for b in cw[d]}
                weights |= acc
            weights = frozenset(weights)
        return CountOnly(length, total, weights)
    out = []
    for vec in t:
        for parts in itertools.product(*(comps[d] for d in vec)):
            out.append(tuple(itertools.chain.from_iterable(parts)))
    return PatternSet._trusted(out, length, "admissible")


def search_meta_s0(s1: VectorSet, s2: VectorSet, w0: int,
                   target_size: Optional[int] = None,
                   node_budget: Optional[int] = None) -> Optional[PatternSet]:
    """Find a large S0 of weight-``w0`` vectors making (S0, s1, s2)
    meta-extendable with S0 admissible.

    Candidates are all weight-``w0`` vectors, ordered by support and then
    digits. With ``target_size`` the first set of that size is returned;
    without it a maximum-cardinality set is returned. Returns None when
    the exhaustive search shows no set of ``target_size`` exists.
    """
    m = s1.dimension
    if s2.dimension != m:
        raise DimensionError("s1 and s2 lengths differ")
    outer = s1.union(s2)
    if len(outer) and min(weight(v) for v in outer) <= w0:
        raise ValueError("every weight in s1 and s2 must exceed w0")
    cands = []
    for sup in itertools.combinations(range(m), w0):
        for digits in itertools.product((1, 2), repeat=w0):
            v = [0] * m
            for c, d in zip(sup, digits):
                v[c] = d
            cands.append(tuple(v))
    if target_size is not None and target_size > len(cands):
        return None

    # unary filter: condition (3) and the x = y case of condition (2)
    mc = _masks(cands, m) if cands else None
    keep = []
    if cands:
        mo = _masks(list(outer), m) if len(outer) else None
        m1 = _masks(list(s1), m) if len(s1) else None
        m2 = _masks(list(s2), m) if len(s2) else None
        for i in range(len(cands)):
            a = tuple(arr[i][None, :] for arr in mc)
            if mo is not None and not _triple_ok(a, a, tuple(arr for arr in mo)).all():
                continue
            if m1 is not None and m2 is not None:
                a3 = tuple(arr[i][None, None, :] for arr in mc)
                b = tuple(arr[:, None, :] for arr in m1)
                c = tuple(arr[None, :, :] for arr in m2)
                if not _triple_ok(a3, b, c).all():
                    continue
            keep.append(i)
    cands = [cands[i] for i in keep]
    n = len(cands)
    if target_size is not None and target_size > n:
        return None
    if n:
        z, o, t = (arr[keep] for arr in mc)
        nz = o | t
        compat = np.ones((n, n), bool)
        for i in range(n):
            lo = np.any((z[i] & nz) != 0, axis=-1)
            hi = np.any((nz[i] & z) != 0, axis=-1)
            compat[i] = lo & hi
            if mo is not None:
                a = (z[i][None, None, :], o[i][None, None, :], t[i][None, None, :])
                b = (z[:, None, :], o[:, None, :], t[:, None, :])
                c = tuple(arr[None, :, :] for arr in mo)
                compat[i] &= _triple_ok(a, b, c).all(axis=1)
        np.fill_diagonal(compat, False)
        masks = (z, o, t)
    best: list = []
    chosen: list = []
    nodes = 0

    def triple_ok_with(k):
        if len(chosen) < 2:
            return True
        pairs = np.array(list(itertools.combinations(chosen, 2)))
        a = tuple(arr[pairs[:, 0]] for arr in masks)
        b = tuple(arr[pairs[:, 1]] for arr in masks)
        c = tuple(arr[k][None, :] for arr in masks)
        return bool(_triple_ok(a, b, c).all())

    goal = target_size

    def grow(pool):
        nonlocal best, nodes
        if len(chosen) > len(best):
            best = list(chosen)
            if goal is not None and len(best) >= goal:
                return True
        bound = goal if goal is not None else len(best) + 1
        if len(chosen) + len(pool) < bound:
            return False
        for idx, k in enumerate(pool):
            if len(chosen) + len(pool) - idx < bound:
                return False
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise SearchBudgetExceeded(f"S0 search exceeded {node_budget} nodes")
            if not triple_ok_with(k):
                continue
            chosen.append(k)
            rest = [q for q in pool[idx + 1:] if compat[k, q]]
            if grow(rest):
                return True
            chosen.pop()
            if goal is None:
                bound = len(best) + 1
        return False

    grow(list(range(n)))
    if goal is not None and len(best) < goal:
        return None
    return PatternSet._trusted([cands[i] for i in best], m, "meta_component")
