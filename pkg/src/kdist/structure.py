"""Interior and unaffiliated vertices, geodesics, BFS trees and spanning trees.

Tie-breaks are lexicographic throughout: geodesics are the least vertex
sequence, BFS parents are the least eligible neighbour, and longest tree
paths use the least endpoint pair.  Path "length" in the spanning-tree lemma
is a vertex count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    _bits,
    all_pairs_distances,
    canonical_form,
)

EXHAUSTIVE_TREE_CAP = 10**6
SAMPLED_TREES = 10**4


class NoKDistanceError(ValueError):
    """The graph has no pair of vertices at distance k."""


class NotAGeodesicError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("a path has at least one vertex")
        if len(set(vs)) != len(vs):
            raise ValueError("path repeats a vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def is_path_in(self, g: Graph) -> bool:
        return all(g.has_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def is_geodesic_in(self, g: Graph, dist: DistanceMatrix | None = None) -> bool:
        d = dist or all_pairs_distances(g)
        return self.is_path_in(g) and d[self.vertices[0], self.vertices[-1]] == len(self) - 1


@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: Mapping[int, int]
    depth: Mapping[int, int]

    @property
    def vertices(self) -> list[int]:
        return sorted(self.parent)

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if v != p:
                ch[p].append(v)
        return ch

    def edges(self) -> list[tuple[int, int]]:
        return sorted((min(v, p), max(v, p)) for v, p in self.parent.items() if v != p)

    def path_to_root(self, v: int) -> list[int]:
        out = [v]
        while self.parent[v] != v:
            v = self.parent[v]
            out.append(v)
        return out


@dataclass
class LemmaVerdict:
    graph_id: str
    k: int
    r: int
    trees_checked: int
    mode: str
    holds: bool | None
    witness: list[tuple[int, int]] | None = None
    interior_count: int = 0

    def __post_init__(self):
        if self.holds is False and not self.witness:
            raise ValueError("a failed verdict must carry a witness tree")

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_id,
            "k": self.k,
            "r": self.r,
            "interior_count": self.interior_count,
            "spanning_trees_checked": self.trees_checked,
            "mode": self.mode,
            "holds": self.holds,
            "witness": [list(e) for e in self.witness] if self.witness else None,
        }


def interior_vertices(g: Graph, k: int, dist: DistanceMatrix | None = None) -> frozenset[int]:
    """Vertices with no k-neighbour."""
    d = (dist or all_pairs_distances(g)).d
    return frozenset(int(v) for v in np.flatnonzero(~(d == k).any(axis=1)))


def unaffiliated_vertices(
    g: Graph, k: int, u: int, v: int, dist: DistanceMatrix | None = None
) -> frozenset[int]:
    """Vertices that are k-neighbours of neither ``u`` nor ``v``."""
    d = (dist or all_pairs_distances(g)).d
    return frozenset(int(z) for z in np.flatnonzero((d[u] != k) & (d[v] != k)))


def unaffiliated_counts(d: np.ndarray, k: int) -> np.ndarray:
    """Unaffiliated-set sizes for every k-distance ``{x, y}`` with ``x < y``."""
    mask = d == k
    xs, ys = np.nonzero(np.triu(mask))
    return (~(mask[xs] | mask[ys])).sum(axis=1)


def min_unaffiliated(g: Graph, k: int, dist: DistanceMatrix | None = None) -> int:
    """Smallest unaffiliated set over all k-distances."""
    d = (dist or all_pairs_distances(g)).d
    counts = unaffiliated_counts(d, k)
    if counts.size == 0:
        raise NoKDistanceError(f"no pair of vertices at distance {k}")
    return int(counts.min())


def geodesic(g: Graph, u: int, v: int, dist: DistanceMatrix | None = None) -> Path:
    """Lexicographically least shortest ``u``-``v`` path."""
    d = (dist or all_pairs_distances(g)).d
    if d[u, v] == UNREACHABLE:
        raise ValueError(f"vertices {u} and {v} are in different components")
    out = [u]
    cur = u
    while cur != v:
        want = d[cur, v] - 1
        cur = next(w for w in _bits(g.adj[cur]) if d[w, v] == want)
        out.append(cur)
    return Path(tuple(out))


def bfs_tree_containing(
    g: Graph, root: int, p: Path | Sequence[int], dist: DistanceMatrix | None = None
) -> RootedTree:
    """Breadth-first tree from ``root`` that uses every edge of the geodesic ``p``.

    Vertices off ``p`` take the least neighbour one level closer to the root
    as parent.  The tree spans the component of ``root``.
    """
    p = p if isinstance(p, Path) else Path(tuple(p))
    d = (dist or all_pairs_distances(g)).d
    if p[0] != root:
        raise NotAGeodesicError("path must start at the root")
    for i, w in enumerate(p):
        if d[root, w] != i or (i and not g.has_edge(p[i - 1], w)):
            raise NotAGeodesicError(f"{list(p)} is not a geodesic from {root}")
    parent = {root: root}
    depth = {root: 0}
    on_path = {w: i for i, w in enumerate(p)}
    for w in range(g.n):
        dw = int(d[root, w])
        if w == root or dw == UNREACHABLE:
            continue
        depth[w] = dw
        if w in on_path:
            parent[w] = p[on_path[w] - 1]
        else:
            parent[w] = next(x for x in _bits(g.adj[w]) if d[root, x] == dw - 1)
    return RootedTree(root, parent, depth)


def _tree_distances(adj: dict[int, list[int]], src: int) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def _tree_path(adj: dict[int, list[int]], a: int, b: int) -> list[int]:
    prev = {a: a}
    frontier = [a]
    while b not in prev:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    nxt.append(y)
        frontier = nxt
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def longest_tree_path(t: RootedTree) -> Path:
    """A longest path of the tree; ties go to the least endpoint pair."""
    adj: dict[int, list[int]] = {v: [] for v in t.parent}
    for a, b in t.edges():
        adj[a].append(b)
        adj[b].append(a)
    best = (0, t.root, t.root)
    for a in sorted(adj):
        for b, dab in _tree_distances(adj, a).items():
            if b > a and (dab > best[0] or (dab == best[0] and (a, b) < best[1:])):
                best = (dab, a, b)
    _, a, b = best
    return Path(tuple(_tree_path(adj, a, b)))


def split_at_nearest(
    p: Path | Sequence[int], dist_from_root: Mapping[int, int] | Sequence[int], g: Graph | None = None
) -> tuple[Path, Path]:
    """Split a BFS-tree path at its vertex nearest the root.

    Distances must strictly decrease to the split vertex and strictly
    increase after it.  With ``g`` given, both halves are checked to be
    geodesics of ``g``.
    """
    vs = list(p)
    ds = [int(dist_from_root[v]) for v in vs]
    i = min(range(len(vs)), key=lambda j: ds[j])
    if any(ds[j] <= ds[j + 1] for j in range(i)) or any(
        ds[j] >= ds[j + 1] for j in range(i, len(vs) - 1)
    ):
        raise ValueError(f"distances {ds} along the path are not unimodal")
    first, second = Path(tuple(vs[: i + 1])), Path(tuple(vs[i:]))
    if g is not None:
        dm = all_pairs_distances(g)
        if not (first.is_geodesic_in(g, dm) and second.is_geodesic_in(g, dm)):
            raise NotAGeodesicError("a half of the split path is not a geodesic")
    return first, second


def v_path(g: Graph, v: int, w: int, dist: DistanceMatrix | None = None) -> tuple[Path, RootedTree]:
    """Longest path of the BFS tree at ``v`` built around the geodesic to ``w``."""
    dm = dist or all_pairs_distances(g)
    tree = bfs_tree_containing(g, v, geodesic(g, v, w, dm), dm)
    return longest_tree_path(tree), tree


def spanning_tree_count(g: Graph) -> int:
    """Matrix-tree theorem, exact integer determinant (Bareiss)."""
    n = g.n
    if n == 1:
        return 1
    L = [[0] * (n - 1) for _ in range(n - 1)]
    for i in range(1, n):
        L[i - 1][i - 1] = g.degree(i)
        for j in _bits(g.adj[i]):
            if j:
                L[i - 1][j - 1] = -1
    m = n - 1
    sign = 1
    prev = 1
    for c in range(m - 1):
        if L[c][c] == 0:
            swap = next((r for r in range(c + 1, m) if L[r][c]), None)
            if swap is None:
                return 0
            L[c], L[swap] = L[swap], L[c]
            sign = -sign
        for r in range(c + 1, m):
            for s in range(c + 1, m):
                L[r][s] = (L[r][s] * L[c][c] - L[r][c] * L[c][s]) // prev
        prev = L[c][c]
    return sign * L[m - 1][m - 1]


def spanning_trees(g: Graph) -> Iterator[list[tuple[int, int]]]:
    """Every spanning tree, by contracting or deleting one edge at a time."""
    edges = g.edges()
    n = g.n
    if n == 1:
        yield []
        return
    chosen: list[tuple[int, int]] = []

    def find(comp, x):
        while comp[x] != x:
            x = comp[x]
        return x

    def connects(comp, rest) -> bool:
        c = list(comp)
        roots = {find(c, x) for x in range(n)}
        left = len(roots)
        for a, b in rest:
            ra, rb = find(c, a), find(c, b)
            if ra != rb:
                c[ra] = rb
                left -= 1
                if left == 1:
                    return True
        return left == 1

    def rec(i: int, comp: list[int], ncomp: int):
        if ncomp == 1:
            yield list(chosen)
            return
        if len(edges) - i < ncomp - 1:
            return
        a, b = edges[i]
        ra, rb = find(comp, a), find(comp, b)
        if ra != rb:
            merged = list(comp)
            merged[ra] = rb
            chosen.append(edges[i])
            yield from rec(i + 1, merged, ncomp - 1)
            chosen.pop()
            if connects(comp, edges[i + 1:]):
                yield from rec(i + 1, comp, ncomp)
        else:
            yield from rec(i + 1, comp, ncomp)

    yield from rec(0, list(range(n)), n)


def random_spanning_tree(g: Graph, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform spanning tree by Wilson's loop-erased random walks."""
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    in_tree = [False] * n
    nxt = [-1] * n
    in_tree[rng.randrange(n)] = True
    for start in range(n):
        u = start
        while not in_tree[u]:
            nxt[u] = rng.choice(nbrs[u])
            u = nxt[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = nxt[u]
    return sorted((min(v, nxt[v]), max(v, nxt[v])) for v in range(n) if nxt[v] >= 0)


def tree_longest_path_vertices(n: int, edges: list[tuple[int, int]]) -> int:
    """Vertex count of a longest path in a tree (two sweeps)."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)

    def far(src):
        dist = [-1] * n
        dist[src] = 0
        stack = [src]
        best = src
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    if dist[y] > dist[best]:
                        best = y
                    stack.append(y)
        return best, dist[best]

    a, _ = far(0)
    _, length = far(a)
    return length + 1


def lemma_holds_for_length(longest: int, k: int, r: int) -> bool:
    """Per-tree condition: no path on r+1 vertices, or one on >= 2k - r vertices."""
    return longest <= r or longest >= 2 * k - r


@dataclass
class SpanningTreeProfile:
    """Which longest-path vertex counts occur among a graph's spanning trees."""

    trees: int
    mode: str
    examples: dict[int, list[tuple[int, int]]] = field(default_factory=dict)


def spanning_tree_profile(
    g: Graph, cap: int = EXHAUSTIVE_TREE_CAP, samples: int = SAMPLED_TREES, seed: int = 0
) -> SpanningTreeProfile:
    total = spanning_tree_count(g)
    if total <= cap:
        trees: Iterator[list[tuple[int, int]]] = spanning_trees(g)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        trees = (random_spanning_tree(g, rng) for _ in range(samples))
        mode = "sampled"
    examples: dict[int, list[tuple[int, int]]] = {}
    checked = 0
    for tree in trees:
        checked += 1
        length = tree_longest_path_vertices(g.n, tree)
        examples.setdefault(length, tree)
    return SpanningTreeProfile(checked, mode, examples)


def spanning_tree_lemma_check(
    g: Graph,
    k: int,
    r: int,
    mode: str = "auto",
    cap: int = EXHAUSTIVE_TREE_CAP,
    samples: int = SAMPLED_TREES,
    seed: int = 0,
    profile: SpanningTreeProfile | None = None,
) -> LemmaVerdict:
    """Check that every spanning tree has no path on r+1 vertices or one on 2k-r.

    Applies to connected graphs with at most ``r`` interior vertices;
    otherwise the verdict has mode ``"not_applicable"``.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    if g.n <= r:
        raise ValueError(f"need n >= r + 1, got n={g.n}, r={r}")
    gid = canonical_form(g).decode()
    interior = len(interior_vertices(g, k))
    if interior > r or not g.is_connected():
        return LemmaVerdict(gid, k, r, 0, "not_applicable", None, interior_count=interior)
    if profile is None:
        if mode == "exhaustive":
            cap = max(cap, spanning_tree_count(g))
        elif mode == "sampled":
            cap = -1
        profile = spanning_tree_profile(g, cap, samples, seed)
    for length, tree in sorted(profile.examples.items()):
        if not lemma_holds_for_length(length, k, r):
            return LemmaVerdict(gid, k, r, profile.trees, profile.mode, False, tree, interior)
    return LemmaVerdict(gid, k, r, profile.trees, profile.mode, True, None, interior)
