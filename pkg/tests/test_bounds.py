import random
from fractions import Fraction
from itertools import combinations

import pytest

from kdist.bounds import (
    BoundReport,
    DisconnectedGraphError,
    edge_decomposition_check,
    evaluate_bounds,
    interior_refined_bound,
    mantel_k_bound,
    star_bound,
    unaffiliated_bound,
    unaffiliated_midpoint_bound,
)
from kdist.enumeration import connected_graphs
from kdist.families import complete, cycle, double_broom, path, star
from kdist.graph import Graph
from kdist.search import proved_bound_violations

from oracles import edge_list_distances, pairs_at


class TestFormulas:
    def test_mantel(self):
        assert mantel_k_bound(10, 5) == 15
        assert mantel_k_bound(9, 1) == Fraction(81, 4)
        assert mantel_k_bound(7, 3) == Fraction(35, 4)
        assert isinstance(mantel_k_bound(7, 3), Fraction)
        with pytest.raises(ValueError):
            mantel_k_bound(4, 5)
        with pytest.raises(ValueError):
            mantel_k_bound(4, 0)

    def test_interior(self):
        assert interior_refined_bound(10, 5, 4) == 9
        assert interior_refined_bound(7, 3, 2) == Fraction(25, 4)
        for n in range(3, 12):
            for k in range(1, n + 1):
                assert interior_refined_bound(n, k, 0) == mantel_k_bound(n, k)
                for r in range(n + 1):
                    assert interior_refined_bound(n, k, r) <= mantel_k_bound(n, k)

    def test_unaffiliated(self):
        assert unaffiliated_bound(10, 4, 6) == 6
        assert unaffiliated_bound(9, 0, 0) == Fraction(81, 4)
        assert unaffiliated_bound(7, 2, 2) == Fraction(25, 4) == interior_refined_bound(7, 3, 2)
        for n in range(1, 12):
            for r in range(n + 1):
                for p in range(n + 1):
                    assert unaffiliated_bound(n, r, p) <= unaffiliated_midpoint_bound(n, r, p)

    def test_star(self):
        assert star_bound(5) == 6
        assert star_bound(3) == 1
        assert star_bound(8) == 21
        with pytest.raises(ValueError):
            star_bound(2)


class TestDecomposition:
    def test_examples(self):
        assert edge_decomposition_check(path(4))
        assert edge_decomposition_check(cycle(7))

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            edge_decomposition_check(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_random_connected(self):
        rng = random.Random(3)
        done = 0
        while done < 300:
            n = rng.randint(1, 9)
            g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.4])
            if not g.is_connected():
                continue
            done += 1
            assert edge_decomposition_check(g)


class TestReports:
    def test_double_broom(self):
        rep = evaluate_bounds(double_broom(7, 3), 3)
        assert (rep.e_gk, rep.r, rep.p) == (6, 2, 2)
        assert rep.triangle_free
        applicable = {k: v for k, v in rep.satisfied.items() if v is not None}
        assert applicable and all(applicable.values())

    def test_c7(self):
        rep = evaluate_bounds(cycle(7), 3)
        assert (rep.e_gk, rep.r) == (7, 0)
        assert rep.bounds["mantel"] == Fraction(35, 4)
        assert rep.satisfied["mantel"] is True
        assert rep.p == 3 and rep.bounds["unaffiliated"] == 7

    def test_not_applicable(self):
        rep = evaluate_bounds(complete(4), 1)
        assert not rep.triangle_free
        for name in ("mantel", "interior", "unaffiliated", "unaffiliated_midpoint"):
            assert rep.satisfied[name] is None
            assert rep.to_dict()["satisfied"][name] == "not applicable"

    def test_star_bound_only_for_k2(self):
        assert evaluate_bounds(star(6), 2).satisfied["star"] is True
        assert evaluate_bounds(star(6), 3).bounds["star"] is None

    def test_flags_recomputable(self):
        for g in connected_graphs(6):
            for k in range(2, 6):
                rep = evaluate_bounds(g, k)
                assert rep.satisfied == rep.recompute_satisfied()
                assert all(isinstance(v, Fraction) for v in rep.bounds.values() if v is not None)

    def test_dict_uses_exact_strings(self):
        d = evaluate_bounds(cycle(7), 3).to_dict()
        assert d["bounds"]["mantel"] == "35/4"


def reference_bound_inputs(g, k):
    """(e, triangle-free, r, p) from plain BFS."""
    d = edge_list_distances(g.n, g.edges())
    pairs = pairs_at(g.n, g.edges(), k)
    nb = {v: {u for u in range(g.n) if d[v][u] == k} for v in range(g.n)}
    tri = not any(nb[a] & nb[b] for a, b in pairs)
    r = sum(1 for v in range(g.n) if not nb[v])
    p = min((g.n - len(nb[a] | nb[b]) for a, b in pairs), default=None)
    return len(pairs), tri, r, p


@pytest.mark.parametrize("n", [4, 5, 6])
def test_batch_checker_matches_report(n):
    for g in connected_graphs(n):
        for k in range(2, n):
            rep = evaluate_bounds(g, k)
            assert (rep.e_gk, rep.triangle_free, rep.r, rep.p) == reference_bound_inputs(g, k)


def test_batch_checker_catches_a_planted_violation(monkeypatch):
    import kdist.search as search

    rows = next(connected_graphs(5).batches())[1]
    real = search.bound_profile

    def inflated(batch, n):
        ek, tri, interior, pmin, pairs = real(batch, n)
        ek = ek.copy()
        ek[:, 2] += 100
        return ek, tri, interior, pmin, pairs

    monkeypatch.setattr(search, "bound_profile", inflated)
    assert proved_bound_violations(rows, 5)
