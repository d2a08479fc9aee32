import itertools
from math import comb

import pytest

from capsets.gf3 import VectorSet
from capsets.patterns import (
    build_chain,
    build_low_weight,
    is_admissible_naive,
    is_constant_weight,
)
from capsets.satgen import (
    CnfFormula,
    DecodeError,
    EncoderBugError,
    EncodingError,
    PROFILES,
    VarMap,
    assignment_from_set,
    brute_force_admissible,
    cell_count,
    decode_model,
    emit_dimacs,
    encode,
    evaluate,
    parse_dimacs,
    parse_solver_output,
)

from solver import run_solver, solver_command


class TestVarMap:
    def test_counts(self):
        f, vm = encode(4, 3)
        assert vm.num_cell_vars == 12
        assert len(vm.pairs) == 12
        assert f.num_vars == vm.num_vars == 24

    @pytest.mark.parametrize("m,w", [(5, 2), (6, 3), (7, 4), (11, 7)])
    def test_cell_law(self, m, w):
        vm = VarMap.build(m, w)
        assert vm.num_cell_vars == w * comb(m, w) == cell_count(m, w)

    def test_layout(self):
        vm = VarMap.build(5, 3)
        cells = sorted(vm.cells.values())
        pairs = sorted(vm.pairs.values())
        assert cells == list(range(1, len(cells) + 1))
        assert pairs == list(range(len(cells) + 1, vm.num_vars + 1))
        assert list(vm.pairs) == sorted(vm.pairs)
        assert vm.pair_var(3, 1, 0) == vm.pair_var(1, 3, 0)


class TestEncode:
    def test_trivial(self):
        f, vm = encode(2, 1)
        assert f.num_vars == 2 and f.clauses == []
        assert emit_dimacs(f).decode().splitlines()[-1] == "p cnf 2 0"

    def test_errors(self):
        with pytest.raises(EncodingError):
            encode(3, 0)
        with pytest.raises(EncodingError):
            encode(4, 3, "i11_7")
        with pytest.raises(EncodingError):
            encode(4, 3, "bogus")

    def test_clause_validation(self):
        f = CnfFormula(2)
        with pytest.raises(EncodingError):
            f.add([])
        with pytest.raises(EncodingError):
            f.add([1, -1])
        with pytest.raises(EncodingError):
            f.add([3])

    def test_i11_7_rules(self):
        rule = PROFILES["i11_7"][1]
        cell = lambda k: k + 1
        # support on coordinates 1..7 (0-based 0..6)
        got = rule((0, 1, 2, 3, 4, 5, 6), cell)
        assert [1, 2] in got and [-1, -2] in got
        assert [4, 5, 6] in got and [-4, -5, -6] in got
        assert [-3] in got and [4] in got
        # third and fourth nonzero entries beyond coordinate 7
        got = rule((0, 1, 5, 7, 8, 9, 10), cell)
        assert [-6] in got
        assert not any(c == [8] for c in got)
        # only coordinate 6 of 4..6 in the support: no mixing rule
        assert [6] not in got

    def test_i11_6_rules(self):
        rule = PROFILES["i11_6"][1]
        got = rule((0, 2, 4, 6, 8, 10), lambda k: k + 1)
        assert [1, 3] in got and [-1, -3] in got
        assert [7, 9, 11] in got and [-7, -9, -11] in got
        assert [-5] in got

    def test_i10_6_rules(self):
        rule = PROFILES["i10_6"][1]
        got = rule((0, 1, 2, 3, 8, 9), lambda k: k + 1)
        assert [-2] in got and [3] in got and [-9, -10] in got
        # second and third nonzero entries past coordinate 6: only the tail rule
        assert rule((0, 6, 7, 8), lambda k: k + 1) == []

    @pytest.mark.parametrize("profile,m,w", [("i11_6", 11, 6), ("i10_6", 10, 6)])
    def test_profiles_reference_valid_vars(self, profile, m, w):
        f, vm = encode(m, w, profile)
        assert all(0 < abs(l) <= f.num_vars for cl in f.clauses for l in cl)

    def test_i10_6_certificate_satisfies_profile(self):
        from capsets import data_file
        from capsets.io import read_vectors
        s = read_vectors(data_file("I_10_6.txt"))
        f, vm = encode(10, 6, "i10_6")
        assert evaluate(f, assignment_from_set(s, vm))


class TestDimacs:
    def test_round_trip(self):
        f, _ = encode(5, 3)
        g = parse_dimacs(emit_dimacs(f).decode())
        assert g.num_vars == f.num_vars and g.clauses == f.clauses

    def test_multiline_clause(self):
        g = parse_dimacs("c hi\np cnf 3 1\n1 -2\n3 0\n")
        assert g.clauses == [[1, -2, 3]]

    def test_deterministic(self):
        a = emit_dimacs(encode(7, 4)[0])
        b = emit_dimacs(encode(7, 4)[0])
        assert a == b
        assert a.startswith(b"c capsets")

    @pytest.mark.slow
    def test_deterministic_i11_7(self):
        assert emit_dimacs(encode(11, 7, "i11_7")[0]) == emit_dimacs(encode(11, 7, "i11_7")[0])


class TestEvaluate:
    def test_examples(self):
        f = CnfFormula(2, [[1, -2]])
        assert evaluate(f, {1: True, 2: True})
        assert not evaluate(f, {1: False, 2: True})
        assert evaluate(f, [1, -2])

    def test_partial(self):
        with pytest.raises(ValueError):
            evaluate(CnfFormula(2, [[1]]), {1: True})


def _cell_sets(m, w):
    """Every colouring of the complete support family, with its assignment."""
    vm = VarMap.build(m, w)
    order = sorted(vm.cells, key=vm.cells.get)
    for bits in itertools.product((False, True), repeat=len(order)):
        assign = dict(zip(range(1, len(order) + 1), bits))
        for (i, j, k), p in vm.pairs.items():
            assign[p] = assign[vm.cells[i, k]] == assign[vm.cells[j, k]]
        vecs = []
        for i, sup in enumerate(vm.supports):
            v = [0] * m
            for k in sup:
                v[k] = 2 if assign[vm.cells[i, k]] else 1
            vecs.append(tuple(v))
        yield assign, VectorSet(vecs, m)


class TestSoundnessAndCompleteness:
    @pytest.mark.parametrize("m,w", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (4, 1)])
    def test_exhaustive(self, m, w):
        f, vm = encode(m, w)
        for assign, s in _cell_sets(m, w):
            sat = evaluate(f, assign)
            assert sat == bool(is_admissible_naive(s))
            if sat:
                model = [v if b else -v for v, b in assign.items()]
                assert decode_model(model, vm) == s

    def test_pair_vars_must_agree(self):
        f, vm = encode(4, 3)
        assign, _ = next(_cell_sets(4, 3))
        p = next(iter(vm.pairs.values()))
        assign[p] = not assign[p]
        assert not evaluate(f, assign)

    def test_known_certificates(self):
        sets = [(build_chain(m), m, m - 1) for m in range(2, 9)]
        sets += [(build_low_weight(m, 2), m, 2) for m in range(3, 9)]
        sets += [(build_low_weight(m, 3), m, 3) for m in range(4, 8)]
        for s, m, w in sets:
            f, vm = encode(m, w)
            assert evaluate(f, assignment_from_set(s, vm)), (m, w)


class TestDecode:
    def test_examples(self):
        vm = VarMap.build(2, 1)
        assert decode_model([-1, -2], vm) == VectorSet([(0, 1), (1, 0)])
        assert decode_model([1, 2], vm) == VectorSet([(0, 2), (2, 0)])

    def test_missing_cell(self):
        with pytest.raises(DecodeError):
            decode_model([1], VarMap.build(2, 1))

    def test_bad_model_is_encoder_bug(self):
        vm = VarMap.build(3, 2)
        # all digits 1: the triple 110, 101, 011 has no good coordinate
        with pytest.raises(EncoderBugError):
            decode_model([-v for v in range(1, vm.num_cell_vars + 1)], vm)


class TestSolverOutput:
    def test_competition(self):
        out = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n")
        assert out.status == "SAT" and out.model == [1, -2, 3]

    def test_unsat(self):
        assert parse_solver_output("s UNSATISFIABLE\n").status == "UNSAT"

    def test_bare_list(self):
        out = parse_solver_output("1 -2 3 0\n")
        assert out.status is None and out.model == [1, -2, 3]

    def test_garbage(self):
        with pytest.raises(DecodeError):
            parse_solver_output("hello world\n")


class TestOracle:
    def test_examples(self):
        assert brute_force_admissible(2, 1).status == "exists"
        r = brute_force_admissible(3, 2)
        assert r.status == "exists" and is_constant_weight(r.certificate, 3, 2)

    def test_inconclusive(self):
        assert brute_force_admissible(9, 5, node_budget=5).status == "inconclusive"

    def test_agrees_with_enumeration(self):
        for m in range(2, 6):
            for w in range(1, m + 1):
                if cell_count(m, w) > 20:
                    continue
                f, _ = encode(m, w)
                sat = any(evaluate(f, a) for a, _ in _cell_sets(m, w))
                assert sat == (brute_force_admissible(m, w).status == "exists")


SOLVER = solver_command()


@pytest.mark.skipif(SOLVER is None, reason="no external SAT solver available")
class TestExternalSolver:
    def test_oracle_agreement(self, tmp_path):
        for m in range(2, 7):
            for w in range(1, m + 1):
                if cell_count(m, w) > 20:
                    continue
                f, vm = encode(m, w)
                path = tmp_path / f"i_{m}_{w}.cnf"
                path.write_bytes(emit_dimacs(f))
                out = parse_solver_output(run_solver(SOLVER, path))
                oracle = brute_force_admissible(m, w)
                assert (out.status == "SAT") == (oracle.status == "exists")
                if out.status == "SAT":
                    assert is_constant_weight(decode_model(out.model, vm), m, w)
