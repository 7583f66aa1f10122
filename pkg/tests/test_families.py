import math
from decimal import Decimal, getcontext
from itertools import product

import pytest

from kdist.families import (
    ODD_K_BROOM_WIDTH,
    BroomSpec,
    balanced_leaves,
    best_broom,
    broom_leaves,
    broom_specs,
    cycle,
    double_broom,
    double_broom_count,
    glued_cliques,
    optimal_broom_width,
    path,
    star,
    t_broom,
    t_broom_distance_count,
    within_one_of_width,
)
from kdist.graph import is_isomorphic, all_pairs_distances, clique_number, distance_k_graph, is_triangle_free, k_distance_count
from kdist.structure import interior_vertices

from oracles import pairs_at


def brute_count(g, k):
    return len(pairs_at(g.n, g.edges(), k))


class TestBrooms:
    def test_examples(self):
        g = t_broom(BroomSpec(4, (1, 1, 1)))
        assert g.n == 7 and brute_count(g, 4) == 3
        g = t_broom(BroomSpec(5, (2, 2)))
        assert g.n == 8 and brute_count(g, 5) == 4

    def test_counts(self):
        assert t_broom_distance_count(BroomSpec(4, (1, 1, 1))) == 3
        assert t_broom_distance_count(BroomSpec(5, (3, 3))) == 9
        assert t_broom_distance_count(BroomSpec(6, (2, 1))) == 2
        for spec in [BroomSpec(5, (3, 3)), BroomSpec(6, (2, 1))]:
            assert brute_count(t_broom(spec), spec.k) == t_broom_distance_count(spec)

    def test_five_broom_for_k8(self):
        spec = BroomSpec(8, (2,) * 5)
        g = t_broom(spec)
        d = all_pairs_distances(g)
        assert g.degree(0) == 5
        handles = [list(range(1 + 3 * i, 4 + 3 * i)) for i in range(5)]
        for h in handles:
            assert [d[0, v] for v in h] == [1, 2, 3]
        for leaves in broom_leaves(spec):
            assert all(d[0, v] == 4 for v in leaves)
        assert g.n == 1 + 5 * 3 + 10

    @pytest.mark.parametrize("bad", [(2, (1, 1)), (4, (3,)), (5, (1, 0))])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            BroomSpec(*bad)

    def test_sweep(self):
        for k in range(3, 10):
            for t in range(2, 5):
                for leaves in product(range(1, 4), repeat=t):
                    spec = BroomSpec(k, leaves)
                    g = t_broom(spec)
                    assert g.n == spec.n
                    if k % 2 == 0:
                        assert g.n == 1 + t * (k - 2) // 2 + sum(leaves)
                    else:
                        assert g.n == t * (k - 1) // 2 + sum(leaves)
                    d = all_pairs_distances(g)
                    groups = broom_leaves(spec)
                    for i in range(t):
                        for j in range(i + 1, t):
                            assert all(d[a, b] == k for a in groups[i] for b in groups[j])
                    assert brute_count(g, k) == t_broom_distance_count(spec)

    def test_balanced_split_is_best(self):
        for k in (4, 5):
            for t in (2, 3, 4):
                for total in range(t, 13):
                    specs = [s for s in broom_specs_by_total(k, t, total)]
                    best = max(t_broom_distance_count(s) for s in specs)
                    assert t_broom_distance_count(BroomSpec(k, balanced_leaves(total, t))) == best

    def test_broom_specs_cover_order(self):
        for spec in broom_specs(12, 4):
            assert spec.n == 12


def broom_specs_by_total(k, t, total):
    for leaves in product(range(1, total + 1), repeat=t):
        if sum(leaves) == total:
            yield BroomSpec(k, leaves)


class TestDoubleBroom:
    def test_examples(self):
        assert k_distance_count(double_broom(7, 3), 3) == 6
        g = double_broom(10, 5)
        assert brute_count(g, 5) == 9
        assert double_broom_count(11, 3) == 20 == brute_count(double_broom(11, 3), 3)
        for k in range(3, 9):
            assert is_isomorphic(double_broom(k + 1, k), path(k + 1))
            assert double_broom_count(k + 1, k) == 1

    def test_rejects(self):
        with pytest.raises(ValueError):
            double_broom(5, 5)
        with pytest.raises(ValueError):
            double_broom_count(4, 5)

    @pytest.mark.parametrize("k", range(3, 8))
    def test_properties(self, k):
        for n in range(k + 1, k + 9):
            g = double_broom(n, k)
            assert brute_count(g, k) == (n - k + 1) ** 2 // 4 == double_broom_count(n, k)
            assert len(interior_vertices(g, k)) == k - 1
            if n >= k + 3:
                assert clique_number(distance_k_graph(g, k)) == 2


class TestGluedCliques:
    @pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
    def test_two_distances(self, n):
        g2 = distance_k_graph(glued_cliques(n), 2)
        assert is_triangle_free(g2)
        assert g2.num_edges() == (n - 1) ** 2 // 4 + 1 == brute_count(glued_cliques(n), 2)

    def test_examples(self):
        assert k_distance_count(glued_cliques(7), 2) == 10
        assert k_distance_count(glued_cliques(5), 2) == 5
        assert k_distance_count(glued_cliques(9), 2) == 17

    @pytest.mark.parametrize("n", [4, 6, 3])
    def test_rejects(self, n):
        with pytest.raises(ValueError):
            glued_cliques(n)


class TestSimpleFamilies:
    def test_examples(self):
        assert k_distance_count(star(5), 2) == 6
        assert k_distance_count(cycle(7), 3) == 7
        assert k_distance_count(path(6), 5) == 1

    def test_rejects(self):
        with pytest.raises(ValueError):
            cycle(2)
        with pytest.raises(ValueError):
            star(1)


class TestBroomWidth:
    def test_25_4(self):
        x, cands = optimal_broom_width(25, 4)
        assert x == pytest.approx(0.25 + math.sqrt(12.0625))
        assert cands == [3, 4]

    def test_49_4(self):
        x, cands = optimal_broom_width(49, 4)
        assert x == pytest.approx(0.25 + math.sqrt(24.0625))
        # |t - 5.155| <= 1 admits 5 and 6 only; 4 is 1.155 away
        assert cands == [5, 6]
        counts = {t: t_broom_distance_count(BroomSpec(4, balanced_leaves(49 - 1 - t, t))) for t in range(2, 10)}
        assert max(counts, key=counts.get) in cands
        assert best_broom(49, 4)[0].t in cands

    def test_small_n_clipped(self):
        for k in (4, 6, 8):
            x, cands = optimal_broom_width(k + 2, k)
            assert x == pytest.approx(0.25 + math.sqrt(1 / 16 + (k + 1) / (k - 2)))
            assert min(cands) >= 2
            assert cands == [t for t in range(2, 10) if abs(t - x) <= 1]

    def test_exact_membership(self):
        getcontext().prec = 60
        for n in range(5, 200):
            for k in (4, 6, 8, 10):
                if n <= k:
                    continue
                x = Decimal(1) / 4 + (Decimal(1) / 16 + Decimal(n - 1) / (k - 2)).sqrt()
                for t in range(2, 14):
                    gap = abs(Decimal(t) - x)
                    if abs(gap - 1) < Decimal("1e-40"):
                        assert within_one_of_width(t, n, k)  # boundary: exactly 1 away
                    else:
                        assert within_one_of_width(t, n, k) == (gap <= 1)

    def test_odd_k(self):
        assert ODD_K_BROOM_WIDTH == 2
        with pytest.raises(ValueError):
            optimal_broom_width(20, 5)
