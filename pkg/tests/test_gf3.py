import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capsets.constructions import build_edel6
from capsets.gf3 import (
    BudgetExceeded,
    CountOnly,
    DimensionError,
    VectorSet,
    add_mod3,
    all_vectors,
    direct_product,
    is_cap_set,
    is_cap_set_naive,
    is_extendable,
    max_cap_size,
    power,
    size_of,
    support,
    weight,
)

from conftest import greedy_cap, greedy_triple


def vs(*words):
    return VectorSet([tuple(int(c) for c in w) for w in words])


def vectors(n):
    return st.tuples(*[st.integers(0, 2)] * n)


def vector_sets(max_n=4, max_size=40):
    return st.integers(1, max_n).flatmap(
        lambda n: st.sets(vectors(n), max_size=max_size).map(lambda s: VectorSet(s, n)))


class TestArithmetic:
    def test_add(self):
        assert add_mod3((0, 1), (0, 1)) == (0, 2)
        assert add_mod3((1, 2), (2, 1)) == (0, 0)

    @given(vectors(5))
    def test_characteristic_three(self, x):
        assert add_mod3(add_mod3(x, x), x) == (0,) * 5

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            add_mod3((0, 1), (1,))

    def test_weight_support(self):
        assert weight((0, 2, 1, 0)) == 2
        assert support((0, 2, 1, 0)) == (1, 2)


class TestVectorSet:
    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            VectorSet([(0, 1), (0, 1)])

    def test_mixed_lengths_rejected(self):
        with pytest.raises(DimensionError):
            VectorSet([(0, 1), (1,)])

    def test_bad_digit(self):
        with pytest.raises(ValueError):
            VectorSet([(0, 3)])

    def test_sorted_iteration(self):
        s = vs("21", "00", "10")
        assert list(s) == [(0, 0), (1, 0), (2, 1)]

    def test_empty_needs_dimension(self):
        assert len(VectorSet([], 3)) == 0

    def test_count_only_size(self):
        c = CountOnly(36, 112 ** 6)
        assert size_of(c) == 112 ** 6
        big = CountOnly(1000, 10 ** 40)
        with pytest.raises(OverflowError):
            len(big)


class TestCapSet:
    def test_examples(self):
        assert is_cap_set(vs("0", "1"))
        v = is_cap_set(vs("0", "1", "2"))
        assert not v and v.witness == ((0,), (1,), (2,))
        assert is_cap_set(VectorSet([], 2))

    def test_max_cap_plane_by_subsets(self):
        # independent oracle: every subset of the 9 points, naive check
        pts = list(all_vectors(2))
        best = 0
        for r in range(len(pts), 0, -1):
            if any(is_cap_set_naive(VectorSet(c, 2)) for c in itertools.combinations(pts, r)):
                best = r
                break
        assert best == 4
        assert max_cap_size(2) == 4

    def test_max_cap_dim3(self):
        assert max_cap_size(1) == 2
        assert max_cap_size(3) == 9

    def test_first_counterexample_is_deterministic(self):
        s = vs("00", "11", "22", "01", "02")
        assert is_cap_set(s).witness == is_cap_set(vs("02", "01", "22", "11", "00")).witness

    @settings(max_examples=150, deadline=None)
    @given(vector_sets())
    def test_pair_check_matches_naive(self, s):
        assert bool(is_cap_set(s)) == bool(is_cap_set_naive(s))

    def test_pair_check_matches_naive_large(self):
        rng = random.Random(7)
        for _ in range(10):
            n = rng.randint(5, 6)
            pts = rng.sample(list(all_vectors(n)), rng.randint(100, 200))
            s = VectorSet(pts, n)
            assert bool(is_cap_set(s)) == bool(is_cap_set_naive(s))
            cap = greedy_cap(rng, n)
            assert is_cap_set(cap) and is_cap_set_naive(cap)

    @settings(max_examples=60, deadline=None)
    @given(vector_sets(), st.randoms())
    def test_permutation_invariance(self, s, rnd):
        perm = list(range(s.dimension))
        rnd.shuffle(perm)
        assert bool(is_cap_set(s)) == bool(is_cap_set(s.permute(perm)))


class TestExtendable:
    def test_examples(self):
        assert is_extendable(vs("0"), vs("1"), vs("1"))
        v = is_extendable(vs("0"), vs("1"), vs("2"))
        assert not v and v.condition == "extendable-2"
        assert v.witness == ((0,), (1,), (2,))

    def test_condition_one_includes_x_equals_y(self):
        # 1 + 1 + 1 = 0 with x = y = 1 in A0
        v = is_extendable(vs("1"), vs("1"), vs("0"))
        assert not v and v.condition == "extendable-1"

    def test_non_cap_component(self):
        v = is_extendable(vs("0"), vs("0", "1", "2"), vs("1"))
        assert not v and v.condition == "not-cap:a1"

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            is_extendable(vs("0"), vs("11"), vs("1"))

    def test_pass_implies_disjoint_and_permutation_invariance(self):
        rng = random.Random(3)
        for _ in range(30):
            n = rng.randint(1, 3)
            t = greedy_triple(rng, n)
            assert t.a0.isdisjoint(t.a1) and t.a0.isdisjoint(t.a2)
            perm = list(range(n))
            rng.shuffle(perm)
            assert is_extendable(*(c.permute(perm) for c in t.components))

    def test_random_triples_permutation_invariant_verdict(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(1, 3)
            pts = list(all_vectors(n))
            parts = [VectorSet(rng.sample(pts, rng.randint(1, min(4, len(pts)))), n) for _ in range(3)]
            perm = list(range(n))
            rng.shuffle(perm)
            got = is_extendable(*parts)
            assert bool(got) == bool(is_extendable(*(p.permute(perm) for p in parts)))
            if got:
                assert parts[0].isdisjoint(parts[1]) and parts[0].isdisjoint(parts[2])


class TestProducts:
    def test_examples(self):
        assert direct_product(vs("0", "1"), vs("0", "1")) == vs("00", "01", "10", "11")
        assert len(direct_product(vs("0", "1"), VectorSet([], 2))) == 0

    def test_cap_closure(self):
        rng = random.Random(5)
        for _ in range(100):
            a = greedy_cap(rng, rng.randint(1, 3))
            b = greedy_cap(rng, rng.randint(1, 2))
            p = direct_product(a, b)
            assert len(p) == len(a) * len(b)
            assert p.dimension == a.dimension + b.dimension
            assert is_cap_set(p)

    def test_power(self):
        assert len(power(vs("0", "1"), 3)) == 8
        assert power(vs("1"), 2) == vs("11")

    def test_power_budget(self):
        a = build_edel6().a1
        with pytest.raises(BudgetExceeded) as exc:
            power(a, 6)
        assert exc.value.count == 112 ** 6

    def test_budget_env_override(self, monkeypatch):
        monkeypatch.setenv("CAPSETS_ELEMENT_BUDGET", "7")
        with pytest.raises(BudgetExceeded):
            power(vs("0", "1"), 3)
