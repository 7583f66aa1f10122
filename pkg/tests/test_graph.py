import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdist.families import complete, cycle, double_broom, path, star, t_broom, BroomSpec
from kdist.graph import (
    UNREACHABLE,
    Graph,
    all_pairs_distances,
    canonical_form,
    clique_number,
    diameter,
    distance_k_graph,
    is_isomorphic,
    is_triangle_free,
    k_degree,
    k_distance_count,
    k_isomorphic,
)
from kdist.families import glued_cliques

from oracles import all_labeled_edge_sets, brute_clique_number, edge_list_distances, pairs_at, perm_key


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    slots = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    return Graph.from_edges(n, [e for e, c in zip(slots, chosen) if c])


def connected(g):
    return g.is_connected()


class TestGraphValidation:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0))

    def test_rejects_loop(self):
        with pytest.raises(ValueError):
            Graph(2, (0b01, 0))

    def test_rejects_out_of_range_bit(self):
        with pytest.raises(ValueError):
            Graph(2, (0b100, 0))

    def test_rejects_too_many_vertices(self):
        with pytest.raises(ValueError):
            Graph.empty(65)


class TestDistances:
    def test_path_end_to_end(self):
        assert all_pairs_distances(path(4))[0, 3] == 3

    def test_cycle_against_modular_formula(self):
        d = all_pairs_distances(cycle(7))
        for i in range(7):
            for j in range(7):
                assert d[i, j] == min(abs(i - j), 7 - abs(i - j))
        assert d[0, 3] == 3 and d[0, 4] == 3

    def test_unreachable(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert all_pairs_distances(g)[0, 2] == UNREACHABLE
        assert diameter(g) == UNREACHABLE

    def test_diameter(self):
        assert diameter(cycle(7)) == 3
        assert diameter(star(5)) == 2

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_matches_reference_bfs(self, g):
        ref = edge_list_distances(g.n, g.edges())
        d = all_pairs_distances(g)
        for u in range(g.n):
            for v in range(g.n):
                want = UNREACHABLE if ref[u][v] is None else ref[u][v]
                assert d[u, v] == want

    @settings(max_examples=40, deadline=None)
    @given(graphs())
    def test_matrix_invariants(self, g):
        d = all_pairs_distances(g).d
        n = g.n
        for u in range(n):
            assert d[u, u] == 0
            for v in range(n):
                assert d[u, v] == d[v, u]
                assert (d[u, v] == 1) == g.has_edge(u, v)
                for w in range(n):
                    if min(d[u, v], d[v, w], d[u, w]) >= 0:
                        assert d[u, w] <= d[u, v] + d[v, w]


class TestDistanceKGraph:
    def test_c7_three(self):
        want = {tuple(sorted(e)) for e in [(0, 3), (3, 6), (6, 2), (2, 5), (5, 1), (1, 4), (4, 0)]}
        assert set(distance_k_graph(cycle(7), 3).edges()) == want

    def test_k1_is_identity(self):
        g = double_broom(8, 4)
        assert distance_k_graph(g, 1) == g

    def test_star_gives_clique_on_leaves(self):
        g2 = distance_k_graph(star(5), 2)
        assert set(g2.edges()) == set(combinations(range(1, 5), 2))

    def test_beyond_diameter_is_empty(self):
        assert distance_k_graph(path(4), 9).num_edges() == 0

    def test_rejects_k0(self):
        with pytest.raises(ValueError):
            distance_k_graph(path(3), 0)

    def test_counts(self):
        assert k_distance_count(cycle(7), 3) == 7
        assert k_distance_count(double_broom(7, 3), 3) == 6
        assert k_distance_count(path(9), 4) == 5

    def test_k_degrees(self):
        assert k_degree(cycle(7), 3, 0) == 2
        assert k_degree(star(5), 2, 0) == 0
        db = double_broom(7, 3)  # leaves 2, 3, 4 on vertex 0
        assert all(k_degree(db, 3, v) == 2 for v in (2, 3, 4))

    @settings(max_examples=60, deadline=None)
    @given(graphs(), st.integers(1, 8))
    def test_matches_reference_pairs(self, g, k):
        assert set(distance_k_graph(g, k).edges()) == pairs_at(g.n, g.edges(), k)

    @settings(max_examples=40, deadline=None)
    @given(graphs(), st.integers(1, 8))
    def test_k_degree_sum(self, g, k):
        assert sum(k_degree(g, k, v) for v in range(g.n)) == 2 * k_distance_count(g, k)

    @settings(max_examples=40, deadline=None)
    @given(graphs().filter(connected))
    def test_counts_sum_to_all_pairs(self, g):
        assert sum(k_distance_count(g, i) for i in range(1, g.n)) == g.n * (g.n - 1) // 2

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=8), st.integers(2, 6))
    def test_triangle_free_gk_degree_sum(self, g, k):
        gk = distance_k_graph(g, k)
        if not is_triangle_free(gk):
            return
        for x, y in gk.edges():
            assert gk.degree(x) + gk.degree(y) <= g.n - k + 1

    def test_induced_subgraph_distance_two(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(3, 10)
            g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.4])
            vs = sorted(rng.sample(range(n), rng.randint(2, n)))
            h2 = distance_k_graph(g.induced_subgraph(vs), 2)
            g2 = distance_k_graph(g, 2)
            for a, b in h2.edges():
                assert g2.has_edge(vs[a], vs[b])

    def test_induced_subgraph_fails_for_k3(self):
        found = find_k3_counterexample()
        assert found is not None
        g, vs = found
        h3 = distance_k_graph(g.induced_subgraph(vs), 3)
        g3 = distance_k_graph(g, 3)
        assert any(not g3.has_edge(vs[a], vs[b]) for a, b in h3.edges())


def find_k3_counterexample():
    """Smallest induced-subgraph pair where H_3 is not a subgraph of G_3."""
    for n in range(4, 7):
        for es in all_labeled_edge_sets(n):
            g = Graph.from_edges(n, es)
            g3 = distance_k_graph(g, 3)
            for drop in range(n):
                vs = [v for v in range(n) if v != drop]
                h3 = distance_k_graph(g.induced_subgraph(vs), 3)
                if any(not g3.has_edge(vs[a], vs[b]) for a, b in h3.edges()):
                    return g, vs
    return None


class TestCliques:
    def test_examples(self):
        assert clique_number(complete(4)) == 4
        assert clique_number(distance_k_graph(cycle(7), 3)) == 2
        assert clique_number(Graph.empty(3)) == 1

    def test_triangle_free(self):
        assert is_triangle_free(cycle(5))
        assert not is_triangle_free(complete(3))
        assert is_triangle_free(distance_k_graph(glued_cliques(7), 2))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=8))
    def test_matches_brute_force(self, g):
        pairs = set(g.edges())
        assert clique_number(g) == brute_clique_number(g.n, pairs)
        assert is_triangle_free(g) == (brute_clique_number(g.n, pairs) <= 2)


class TestCanonicalForm:
    def test_relabel_invariance(self):
        g = Graph.from_edges(3, [(0, 1)])
        assert canonical_form(g) == canonical_form(g.relabel([2, 0, 1]))

    def test_path_vs_star(self):
        assert canonical_form(path(4)) != canonical_form(star(4))

    def test_eleven_graphs_on_four_vertices(self):
        assert len({canonical_form(Graph.from_edges(4, es)) for es in all_labeled_edge_sets(4)}) == 11

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_agrees_with_permutation_oracle(self, n):
        classes = {}
        for es in all_labeled_edge_sets(n):
            key = perm_key(n, es) if n <= 5 else None
            form = canonical_form(Graph.from_edges(n, es))
            if key is not None:
                classes.setdefault(key, set()).add(form)
            else:
                classes.setdefault(form, set()).add(form)
        assert all(len(v) == 1 for v in classes.values())
        forms = {next(iter(v)) for v in classes.values()}
        assert len(forms) == len(classes) == [1, 2, 4, 11, 34, 156][n - 1]

    def test_pairs_on_six_vertices_against_permutations(self):
        rng = random.Random(11)
        slots = list(combinations(range(6), 2))
        perms = list(permutations(range(6)))
        for _ in range(150):
            es = [e for e in slots if rng.random() < 0.5]
            g = Graph.from_edges(6, es)
            if rng.random() < 0.5:
                h = g.relabel(list(rng.choice(perms)))
            else:
                h = Graph.from_edges(6, [e for e in slots if rng.random() < 0.5])
            want = perm_key(6, g.edges()) == perm_key(6, h.edges())
            assert is_isomorphic(g, h) == want

    @settings(max_examples=50, deadline=None)
    @given(graphs(max_n=12), st.randoms(use_true_random=False))
    def test_random_relabel(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert canonical_form(g) == canonical_form(g.relabel(perm))


class TestKIsomorphic:
    def test_self(self):
        g = double_broom(9, 4)
        assert k_isomorphic(g, g, 4)

    def test_c7_vs_double_broom(self):
        assert not k_isomorphic(cycle(7), double_broom(7, 3), 3)

    def test_double_broom_vs_two_broom(self):
        assert k_isomorphic(double_broom(10, 5), t_broom(BroomSpec(5, (3, 3))), 5)

    def test_different_orders(self):
        assert not k_isomorphic(path(4), path(5), 3)
