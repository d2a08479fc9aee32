"""CNF encoding of "an I(m, w) exists", DIMACS output, model decoding.

Variables
---------
One cell variable per nonzero entry: ``cell_var(i, k)`` is true when the
vector on support i has digit 2 at coordinate k (false means digit 1).
One pair variable per pair of supports i < j and shared coordinate k:
``pair_var(i, j, k)`` is true when both vectors carry the same digit at k.

Clauses
-------
* pair definitions, p <-> (b_i <-> b_j), four 3-literal clauses each;
* for each triple of supports with no coordinate in exactly one of them,
  a clause asking one coordinate in exactly two of them to differ;
* optional symmetry-breaking profiles on cell variables.

Coordinates are 1-based in profiles and comments, 0-based internally.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import __version__
from .gf3 import VectorSet
from .patterns import (
    PatternSet,
    SearchBudgetExceeded,
    _critical_triples,
    is_constant_weight,
    search_constant_weight,
)


class EncodingError(ValueError):
    pass


class DecodeError(ValueError):
    """The model is missing cell assignments or is malformed."""


class EncoderBugError(RuntimeError):
    """A model decoded to a set that fails verification."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"decoded set fails verification: {verdict.describe()}")


@dataclass
class VarMap:
    m: int
    w: int
    supports: List[Tuple[int, ...]]
    cells: Dict[Tuple[int, int], int] = field(default_factory=dict)
    pairs: Dict[Tuple[int, int, int], int] = field(default_factory=dict)

    @classmethod
    def build(cls, m: int, w: int) -> "VarMap":
        vm = cls(m, w, list(itertools.combinations(range(m), w)))
        nxt = 1
        for i, sup in enumerate(vm.supports):
            for k in sup:
                vm.cells[i, k] = nxt
                nxt += 1
        sets = [set(s) for s in vm.supports]
        for i, j in itertools.combinations(range(len(vm.supports)), 2):
            for k in sorted(sets[i] & sets[j]):
                vm.pairs[i, j, k] = nxt
                nxt += 1
        return vm

    def cell_var(self, i: int, k: int) -> int:
        return self.cells[i, k]

    def pair_var(self, i: int, j: int, k: int) -> int:
        if i > j:
            i, j = j, i
        return self.pairs[i, j, k]

    @property
    def num_cell_vars(self) -> int:
        return len(self.cells)

    @property
    def num_vars(self) -> int:
        return len(self.cells) + len(self.pairs)


@dataclass
class CnfFormula:
    num_vars: int
    clauses: List[List[int]] = field(default_factory=list)
    comments: List[str] = field(default_factory=list)

    def add(self, clause: Sequence[int]) -> None:
        clause = list(clause)
        if not clause:
            raise EncodingError("empty clause")
        lits = set(clause)
        if any(-x in lits for x in lits):
            raise EncodingError(f"tautological clause {clause}")
        if any(x == 0 or abs(x) > self.num_vars for x in clause):
            raise EncodingError(f"literal out of range in {clause}")
        self.clauses.append(clause)


# -- symmetry-breaking profiles ----------------------------------------------

def _both_digits(cells: List[int]) -> List[List[int]]:
    # at least one 2 and at least one 1
    return [list(cells), [-c for c in cells]]


def _profile_i11_7(sup, cell) -> List[List[int]]:
    out = []
    p = sup  # 0-based coordinates of the nonzero entries, ascending
    out.append([cell(p[0]), cell(p[1])])
    out.append([-cell(p[0]), -cell(p[1])])
    mid = [k for k in p if k in (3, 4, 5)]
    if len(mid) >= 2:
        out.extend(_both_digits([cell(k) for k in mid]))
    if p[2] <= 6:
        out.append([-cell(p[2])])
    if p[3] <= 6:
        out.append([cell(p[3])])
    return out


def _profile_i11_6(sup, cell) -> List[List[int]]:
    p = sup
    out = [[cell(p[0]), cell(p[1])], [-cell(p[0]), -cell(p[1])]]
    out.extend(_both_digits([cell(k) for k in p[-3:]]))
    if p[2] <= 6:
        out.append([-cell(p[2])])
    return out


def _profile_i10_6(sup, cell) -> List[List[int]]:
    p = sup
    out = []
    if p[1] <= 5:
        out.append([-cell(p[1])])
    if p[2] <= 5:
        out.append([cell(p[2])])
    if 8 in p and 9 in p:
        out.append([-cell(8), -cell(9)])
    return out


PROFILES = {
    "none": (None, None),
    "i11_7": ((11, 7), _profile_i11_7),
    "i11_6": ((11, 6), _profile_i11_6),
    "i10_6": ((10, 6), _profile_i10_6),
}


def encode(m: int, w: int, profile: str = "none") -> Tuple[CnfFormula, VarMap]:
    """Build the CNF whose models are the I(m, w) sets (restricted by the
    named symmetry-breaking profile)."""
    if not 1 <= w <= m:
        raise EncodingError(f"need 1 <= w <= m, got m={m}, w={w}")
    if profile not in PROFILES:
        raise EncodingError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    shape, rule = PROFILES[profile]
    if shape is not None and shape != (m, w):
        raise EncodingError(f"profile {profile} applies to I{shape}, not I({m},{w})")

    vm = VarMap.build(m, w)
    f = CnfFormula(vm.num_vars)
    f.comments = [
        f"capsets {__version__} I(m,w) existence",
        f"m={m} w={w} profile={profile}",
        f"cell vars 1..{vm.num_cell_vars} (true = digit 2), {len(vm.pairs)} pair vars after them",
    ]
    for (i, j, k), p in vm.pairs.items():
        a, b = vm.cells[i, k], vm.cells[j, k]
        f.add([-p, -a, b])
        f.add([-p, a, -b])
        f.add([p, a, b])
        f.add([p, -a, -b])

    sets = [set(s) for s in vm.supports]
    for i, j, k in _critical_triples(vm.supports):
        si, sj, sk = sets[i], sets[j], sets[k]
        clause = []
        for a, b, other in ((i, j, sk), (i, k, sj), (j, k, si)):
            for c in sorted((sets[a] & sets[b]) - other):
                clause.append(-vm.pairs[a, b, c])
        if not clause:
            raise EncodingError(
                f"supports {vm.supports[i]}, {vm.supports[j]}, {vm.supports[k]} "
                "have no coordinate in exactly one or exactly two of them"
            )
        f.add(clause)

    if rule is not None:
        for i, sup in enumerate(vm.supports):
            for clause in rule(sup, lambda k, i=i: vm.cells[i, k]):
                f.add(clause)
    return f, vm


def emit_dimacs(f: CnfFormula) -> bytes:
    lines = [f"c {c}" for c in f.comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    lines.extend(" ".join(map(str, cl)) + " 0" for cl in f.clauses)
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_dimacs(data: str) -> CnfFormula:
    """Read a DIMACS CNF. Clauses may span lines; comments are kept."""
    num_vars = None
    comments, clauses, current = [], [], []
    for line in data.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DecodeError(f"bad header {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise DecodeError("missing 'p cnf' header")
    if current:
        clauses.append(current)
    return CnfFormula(num_vars, clauses, comments)


def evaluate(f: CnfFormula, assignment) -> bool:
    """True iff every clause has a true literal.

    ``assignment`` maps each variable 1..num_vars to a bool, or is a
    sequence of signed literals covering every variable.
    """
    if not isinstance(assignment, dict):
        assignment = {abs(l): l > 0 for l in assignment}
    missing = [v for v in range(1, f.num_vars + 1) if v not in assignment]
    if missing:
        raise ValueError(f"assignment is partial; {len(missing)} variables unset (first: {missing[0]})")
    return all(any(assignment[abs(l)] == (l > 0) for l in cl) for cl in f.clauses)


def assignment_from_set(s: VectorSet, vm: VarMap) -> Dict[int, bool]:
    """The variable assignment that encodes a known I(m, w) certificate."""
    by_support = {}
    for v in s:
        sup = tuple(k for k, d in enumerate(v) if d)
        by_support[sup] = v
    assign = {}
    for i, sup in enumerate(vm.supports):
        if sup not in by_support:
            raise ValueError(f"certificate has no vector with support {sup}")
        v = by_support[sup]
        for k in sup:
            assign[vm.cells[i, k]] = v[k] == 2
    for (i, j, k), p in vm.pairs.items():
        assign[p] = assign[vm.cells[i, k]] == assign[vm.cells[j, k]]
    return assign


def decode_model(model: Iterable[int], vm: VarMap) -> PatternSet:
    """Turn a solver model into the I(m, w) it encodes, after verification.

    Pair variables are ignored; they are determined by the cells.
    """
    values = {}
    for lit in model:
        if lit:
            values[abs(lit)] = lit > 0
    vecs = []
    for i, sup in enumerate(vm.supports):
        v = [0] * vm.m
        for k in sup:
            var = vm.cells[i, k]
            if var not in values:
                raise DecodeError(f"model does not assign cell variable {var}")
            v[k] = 2 if values[var] else 1
        vecs.append(tuple(v))
    s = PatternSet(vecs, vm.m)
    verdict = is_constant_weight(s, vm.m, vm.w)
    if not verdict:
        raise EncoderBugError(verdict)
    return PatternSet.of(s, f"constant_weight({vm.m},{vm.w})")


@dataclass
class SolverOutput:
    status: Optional[str]  # "SAT", "UNSAT" or None when not stated
    model: List[int]


def parse_solver_output(text: str) -> SolverOutput:
    """Parse SAT-competition output (``s`` and ``v`` lines), falling back to
    a bare whitespace-separated list of signed integers."""
    status = None
    model: List[int] = []
    saw_v = False
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word == "SATISFIABLE":
                status = "SAT"
            elif word == "UNSATISFIABLE":
                status = "UNSAT"
            else:
                status = word
        elif line.startswith("v ") or line == "v":
            saw_v = True
            model.extend(int(t) for t in line[1:].split())
    if not saw_v and status is None:
        toks = text.split()
        if not all(re.fullmatch(r"-?\d+", t) for t in toks):
            raise DecodeError("solver output is neither competition format nor an integer list")
        model = [int(t) for t in toks]
    model = [l for l in model if l != 0]
    return SolverOutput(status, model)


@dataclass
class OracleResult:
    status: str  # "exists", "nonexistent" or "inconclusive"
    certificate: Optional[PatternSet] = None
    exhaustive: bool = True


def brute_force_admissible(m: int, w: int, node_budget: Optional[int] = 10**6) -> OracleResult:
    """Independent check of I(m, w) existence by backtracking over colourings.

    A finished search is exhaustive, so "nonexistent" is a proof. Running
    out of nodes gives "inconclusive".
    """
    try:
        found = search_constant_weight(m, w, node_budget)
    except SearchBudgetExceeded:
        return OracleResult("inconclusive", None, False)
    if found is None:
        return OracleResult("nonexistent")
    verdict = is_constant_weight(found, m, w)
    if not verdict:
        raise AssertionError(f"oracle produced an invalid set: {verdict.describe()}")
    return OracleResult("exists", found)


def cell_count(m: int, w: int) -> int:
    return w * comb(m, w)
