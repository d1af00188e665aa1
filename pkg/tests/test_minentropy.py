import random
from decimal import Decimal
from fractions import Fraction as F

import pytest

from entropoly.core import Coupling, Distribution, entropy, is_row_deterministic, joint_entropy
from entropoly.errors import DenominatorOverflow
from entropoly.minentropy import (
    NoWitness,
    decide_entropy_min,
    decide_entropy_min_two_cols,
    local_search_min_entropy,
    max_joint_entropy,
    min_joint_entropy_exact,
)
from entropoly.polytope import TransportationPolytope, enumerate_vertices, is_member, northwest_corner

from oracles import brute_assignments, brute_min_entropy, d_entropy, random_marginals

HALF = Distribution(["1/2", "1/2"])
WORKED = TransportationPolytope(Distribution.from_weights([1, 3, 5]), Distribution.from_weights([2, 4, 3]))
# 100-digit oracle minimum over all 13 vertices of the (1,3,5)/(2,4,3) polytope.
WORKED_MIN = Decimal("1.752715278979704746867342684357471959044135123931912878537365535346274824")


def poly(p, q):
    return TransportationPolytope(Distribution(p), Distribution(q))


class TestExactMinimum:
    def test_uniform_two_by_two(self):
        r = min_joint_entropy_exact(TransportationPolytope(HALF, HALF))
        assert r.best.cells == ((F(1, 2), 0), (0, F(1, 2)))
        assert r.value.contains(1)
        assert r.optimal and len(r.co_minimal) == 1

    def test_singleton(self):
        pl = poly([1], ["1/3", "2/3"])
        r = min_joint_entropy_exact(pl)
        assert r.best.cells == ((F(1, 3), F(2, 3)),)
        assert r.value.overlaps(entropy(pl.q))

    def test_worked_example(self):
        r = min_joint_entropy_exact(WORKED)
        assert r.value.contains(WORKED_MIN)
        _, key = brute_min_entropy(WORKED.p, WORKED.q)
        assert r.best.key() == key
        assert r.vertices_visited == 13

    def test_limit_returns_best_so_far(self):
        r = min_joint_entropy_exact(WORKED, limit=2)
        assert not r.optimal and r.limit_exceeded
        assert is_member(r.best, WORKED)

    def test_result_invariants_random(self):
        rng = random.Random(3)
        for _ in range(40):
            pl = poly(*random_marginals(rng))
            r = min_joint_entropy_exact(pl)
            assert is_member(r.best, pl)
            assert r.value.overlaps(joint_entropy(r.best))
            floor = max(entropy(pl.p).lower_exact, entropy(pl.q).lower_exact)
            assert r.value.upper_exact >= floor - F(1, 2**38)

    def test_beats_random_members(self):
        # Global minimality spot check: random members never go below the optimum.
        rng = random.Random(9)
        pl = WORKED
        r = min_joint_entropy_exact(pl)
        verts = enumerate_vertices(pl)
        for _ in range(1000):
            w = [rng.random() for _ in verts]
            t = sum(w)
            cells = [[sum(F(wi / t).limit_denominator(10**6) * v.coupling.cells[i][j] for wi, v in zip(w, verts))
                      for j in range(3)] for i in range(3)]
            total = sum(map(sum, cells))
            s = Coupling([[c / total for c in row] for row in cells])
            assert is_member(s, pl)
            assert not joint_entropy(s).certainly_below(r.value - F(1, 2**38))


class TestMaxEntropy:
    def test_uniform(self):
        s = max_joint_entropy(TransportationPolytope(HALF, HALF))
        assert all(c == F(1, 4) for r in s.cells for c in r)
        assert joint_entropy(s).contains(2)

    def test_singleton(self):
        q = Distribution(["1/5", "4/5"])
        assert max_joint_entropy(TransportationPolytope(Distribution([1]), q)).cells == ((F(1, 5), F(4, 5)),)

    def test_product_identity(self):
        s = max_joint_entropy(WORKED)
        assert is_member(s, WORKED)
        assert joint_entropy(s).overlaps(entropy(WORKED.p) + entropy(WORKED.q))
        assert joint_entropy(s).contains(d_entropy(WORKED.p) + d_entropy(WORKED.q))


class TestDecide:
    def test_witness(self):
        w = decide_entropy_min(poly(["1/2", "1/4", "1/4"], ["1/2", "1/2"]))
        assert w.assignment == {0: 0, 1: 1, 2: 1}
        assert brute_assignments([F(1, 2), F(1, 4), F(1, 4)], [F(1, 2), F(1, 2)]) == [0, 1, 1]

    def test_no_witness(self):
        w = decide_entropy_min(poly(["1/3"] * 3, ["1/2", "1/2"]))
        assert isinstance(w, NoWitness) and w.exhausted and not w
        assert brute_assignments([F(1, 3)] * 3, [F(1, 2)] * 2) is None

    def test_identity_when_equal(self):
        p = ["1/10", "2/10", "3/10", "4/10"]
        w = decide_entropy_min(poly(p, p))
        assert w.assignment == {0: 0, 1: 1, 2: 2, 3: 3}

    def test_zero_rows_skipped(self):
        w = decide_entropy_min(poly([0, "1/2", "1/2"], ["1/2", 0, "1/2"]))
        assert w.assignment == {1: 0, 2: 2}
        assert w.coupling.cells[0] == (0, 0, 0)

    def test_witness_coupling_is_certificate(self):
        rng = random.Random(4)
        for _ in range(60):
            pl = poly(*random_marginals(rng))
            w = decide_entropy_min(pl)
            if w:
                assert is_member(w.coupling, pl) and is_row_deterministic(w.coupling)

    def test_matches_brute_force(self):
        rng = random.Random(6)
        for _ in range(150):
            p, q = random_marginals(rng, nmax=5, mmax=3)
            w = decide_entropy_min(poly(p, q))
            ref = brute_assignments(p, q)
            if ref is None:
                assert not w
            else:
                assert [w.assignment.get(i) for i in range(len(p))] == ref

    def test_cross_validates_with_exact_minimum(self):
        rng = random.Random(8)
        for _ in range(60):
            pl = poly(*random_marginals(rng))
            w = decide_entropy_min(pl)
            r = min_joint_entropy_exact(pl)
            if w:
                assert r.value.overlaps(entropy(pl.p))
            else:
                assert r.value.lower_exact > entropy(pl.p).upper_exact


class TestTwoColumns:
    def test_witness(self):
        w = decide_entropy_min_two_cols(Distribution(["3/6", "1/6", "2/6"]), "3/6")
        assert w.assignment == {0: 0, 1: 1, 2: 1}

    def test_no_witness(self):
        assert not decide_entropy_min_two_cols(HALF, "1/4")

    def test_q_zero(self):
        w = decide_entropy_min_two_cols(Distribution(["1/3", "2/3"]), 0)
        assert w.assignment == {0: 1, 1: 1}

    def test_budget(self):
        with pytest.raises(DenominatorOverflow):
            decide_entropy_min_two_cols(Distribution(["1/1000003", "1000002/1000003"]), 0, budget=10**6)

    def test_agrees_with_general(self):
        rng = random.Random(10)
        for _ in range(200):
            n = rng.randint(1, 7)
            d = [rng.randint(0, 12) for _ in range(n)]
            if not sum(d):
                continue
            p = Distribution.from_weights(d)
            s = rng.randint(0, sum(d))
            q = F(s, sum(d))
            a = decide_entropy_min_two_cols(p, q)
            b = decide_entropy_min(TransportationPolytope(p, Distribution([q, 1 - q])))
            assert bool(a) == bool(b)
            if a:
                assert a.assignment == b.assignment


class TestLocalSearch:
    def test_stays_at_optimum(self):
        pl = TransportationPolytope(HALF, HALF)
        r = local_search_min_entropy(pl, northwest_corner(pl))
        assert r.best.cells == ((F(1, 2), 0), (0, F(1, 2)))
        assert r.optimal and r.value.contains(1)

    def test_singleton(self):
        pl = poly([1], ["1/3", "2/3"])
        start = northwest_corner(pl)
        assert local_search_min_entropy(pl, start).best == start.coupling

    def test_never_below_exact(self):
        exact = min_joint_entropy_exact(WORKED)
        r = local_search_min_entropy(WORKED, northwest_corner(WORKED))
        assert not r.value.certainly_below(exact.value)
        rng = random.Random(12)
        for _ in range(40):
            pl = poly(*random_marginals(rng))
            r = local_search_min_entropy(pl, northwest_corner(pl))
            assert not r.value.certainly_below(min_joint_entropy_exact(pl).value)
            assert is_member(r.best, pl)
