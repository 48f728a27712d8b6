"""
Tests for kbip.core.factorization
"""

import numpy as np
import pytest
from sympy import isprime

from kbip.config import Config, FactorizationError
from kbip.core.factorization import (
    FamilyKind,
    Factorization,
    check_p1f,
    common_edges,
    cyclic_factorization,
    factorization_from_matchings,
    latin_square,
    p_squared_factorization,
    p_squared_matching,
    spot_check_p1f,
    transversal_matching,
    union_cycles,
    validate_p1f,
)
from kbip.core.field import make_context
from kbip.core.perm import Permutation
from kbip.utils import encode_pair


class TestCyclicFamily:
    def test_matching_one_is_the_shift(self):
        f = cyclic_factorization(5)
        assert f[1] == Permutation.from_notation("(0 1 2 3 4)")
        assert f[0] == Permutation.identity(5)

    @pytest.mark.parametrize("n", [0, 1, 2, 4, 10])
    def test_rejects_bad_sizes(self, n):
        with pytest.raises(FactorizationError):
            cyclic_factorization(n)

    @pytest.mark.parametrize("n", [5, 7, 11, 13])
    def test_prime_sides_are_perfect(self, n):
        report = validate_p1f(cyclic_factorization(n))
        assert report.ok
        assert report.pairs_checked == n * (n - 1) // 2

    def test_composite_side_fails(self):
        report = validate_p1f(cyclic_factorization(9))
        assert not report.ok
        assert (0, 3, (3, 3, 3)) in report.failing_pairs

    def test_fast_mode_stops_at_first_failure(self):
        report = validate_p1f(cyclic_factorization(9), fast=True)
        assert not report.ok
        assert report.failing_pairs == [(0, 3, (3, 3, 3))]
        assert report.pairs_checked == 3

    def test_perfect_exactly_for_primes(self):
        for n in range(3, 100, 2):
            assert validate_p1f(cyclic_factorization(n), fast=True).ok == isprime(n), n

    def test_latin_square(self):
        square = latin_square(cyclic_factorization(7))
        for column in square.T:
            assert sorted(column.tolist()) == list(range(7))


class TestPSquaredFamily:
    @pytest.mark.parametrize("p,pairs", [(3, 36), (5, 300), (7, 1176)])
    def test_is_perfect(self, p, pairs):
        report = validate_p1f(p_squared_factorization(make_context(p)))
        assert report.ok
        assert report.pairs_checked == pairs

    def test_zero_factor_is_identity(self, ctx5):
        assert p_squared_matching(ctx5, 0, 0) == Permutation.identity(25)

    def test_four_cases(self, ctx5):
        m = p_squared_matching(ctx5, 1, 1)
        # c = 0, a+b+d != 0
        assert m(encode_pair(0, 1, 5)) == encode_pair(1, 3, 5)
        # c = 0, a+b+d = 0
        assert m(encode_pair(0, 3, 5)) == encode_pair(3, 0, 5)
        # c != 0, b+d = 0
        assert m(encode_pair(2, 4, 5)) == encode_pair(0, 0, 5)
        # c != 0, b+d != 0
        assert m(encode_pair(2, 1, 5)) == encode_pair(3, 2, 5)

    def test_single_matching_agrees_with_family(self, ctx7):
        f = p_squared_factorization(ctx7)
        for a, b in [(0, 1), (3, 0), (2, 5), (6, 6)]:
            assert p_squared_matching(ctx7, a, b) == f[encode_pair(a, b, 7)]

    def test_rejects_large_primes(self):
        Config.MAX_PRIME_P_SQUARED = 5
        with pytest.raises(FactorizationError):
            p_squared_factorization(make_context(7))

    def test_spot_check(self, ctx5):
        report = spot_check_p1f(p_squared_factorization(ctx5), samples=50, seed=1)
        assert report.ok
        assert not report.exhaustive
        assert report.pairs_checked == 50

    def test_check_dispatch(self):
        Config.P1F_EXHAUSTIVE_PRIMES = [3]
        Config.P1F_SPOT_CHECK_PAIRS = 40
        report = check_p1f(p_squared_factorization(make_context(5)))
        assert report.ok
        assert not report.exhaustive
        assert report.pairs_checked == 40

    def test_dict_round_trip(self, ctx3):
        f = p_squared_factorization(ctx3)
        rebuilt = Factorization.from_dict(f.to_dict())
        assert rebuilt.matchings == f.matchings
        assert rebuilt.kind is FamilyKind.P_SQUARED
        assert rebuilt.context == ctx3


class TestTransversal:
    def test_cyclic(self, ctx5):
        assert transversal_matching(FamilyKind.CYCLIC, ctx5) == Permutation.from_notation("(0)(1 2 4 3)")

    def test_cyclic_from_int(self):
        assert transversal_matching("cyclic", 5) == Permutation.from_notation("(0)(1 2 4 3)")

    def test_p_squared(self, ctx5):
        m = transversal_matching(FamilyKind.P_SQUARED, ctx5)
        assert m(encode_pair(3, 1, 5)) == encode_pair(4, 2, 5)
        assert m(0) == 0

    def test_custom_has_none(self, ctx5):
        with pytest.raises(FactorizationError):
            transversal_matching(FamilyKind.CUSTOM, ctx5)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_one_common_edge_per_factor(self, p):
        ctx = make_context(p)
        hits = common_edges(p_squared_factorization(ctx), transversal_matching(FamilyKind.P_SQUARED, ctx))
        assert all(len(row) == 1 for row in hits)
        hits = common_edges(cyclic_factorization(p), transversal_matching(FamilyKind.CYCLIC, ctx))
        assert all(len(row) == 1 for row in hits)

    def test_cyclic_common_edges_at_five(self, ctx5):
        hits = common_edges(cyclic_factorization(5), transversal_matching(FamilyKind.CYCLIC, ctx5))
        assert hits == [[0], [1], [2], [3], [4]]


class TestCustomFamilies:
    def test_rejects_repeated_matching(self):
        shift = Permutation.from_notation("(0 1 2)")
        with pytest.raises(FactorizationError):
            factorization_from_matchings([Permutation.identity(3), shift, shift])

    def test_rejects_wrong_count(self):
        with pytest.raises(FactorizationError):
            factorization_from_matchings([Permutation.identity(3)])

    def test_accepts_latin_family(self):
        f = factorization_from_matchings(cyclic_factorization(5).matchings)
        assert f.kind is FamilyKind.CUSTOM
        assert validate_p1f(f).ok


class TestUnionCycles:
    def test_example(self):
        mA = Permutation.from_notation("(0 1 2)(3 4)")
        mB = Permutation.from_notation("(0 1)", 5)
        cycles = union_cycles(mA, mB)
        assert [c.labels for c in cycles] == [(1, 2), (3, 4)]
        assert all(len(c) == 4 for c in cycles)
        assert cycles[0].edges == ((1, 2), (1, 0), (2, 0), (2, 2))

    def test_equal_matchings(self):
        m = Permutation.from_notation("(0 1 2)")
        assert union_cycles(m, m) == []

    def test_hamiltonian_union(self):
        f = cyclic_factorization(5)
        cycles = union_cycles(f[1], f[2])
        assert len(cycles) == 1
        assert len(cycles[0]) == 10

    def test_edges_alternate(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            mA = Permutation(rng.permutation(15))
            mB = Permutation(rng.permutation(15))
            for cycle in union_cycles(mA, mB):
                for k, (top, bottom) in enumerate(cycle.edges):
                    assert (mA if k % 2 == 0 else mB)(top) == bottom
                # consecutive labels share a bottom vertex
                for k in range(len(cycle.labels)):
                    here = cycle.labels[k]
                    after = cycle.labels[(k + 1) % len(cycle.labels)]
                    assert mB(here) == mA(after)
