"""Graphs on at most 64 vertices, hop distances and distance-k graphs.

A :class:`Graph` stores one integer bitset per vertex.  Everything here is a
pure function of immutable values, so graphs and distance matrices can be
shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import graph6 as _g6
from ._canon import canonical_labeling

MAX_VERTICES = 64
UNREACHABLE = -1
"""Distance sentinel for vertex pairs in different components."""


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is the neighbourhood bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        adj = tuple(int(r) for r in self.adj)
        object.__setattr__(self, "adj", adj)
        if len(adj) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(adj):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not (adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_graph6(cls, data: bytes | str) -> "Graph":
        n, rows = _g6.decode(data)
        if n > MAX_VERTICES:
            raise ValueError(f"graph6 record has n={n} > {MAX_VERTICES}")
        return cls(n, tuple(rows))

    def to_graph6(self) -> bytes:
        return _g6.encode(self.n, self.adj)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of the vertices")
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for u in _bits(self.adj[v]):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return Graph(self.n, tuple(rows))

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, vertices renumbered in increasing order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            r = 0
            for u in _bits(self.adj[v]):
                if u in index:
                    r |= 1 << index[u]
            rows.append(r)
        return Graph(len(vs), tuple(rows))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(self.n + other.n, self.adj + tuple(r << shift for r in other.adj))

    def is_connected(self) -> bool:
        return _reach(self, 0) == self.full_mask

    def components(self) -> list[list[int]]:
        left = self.full_mask
        comps = []
        while left:
            v = (left & -left).bit_length() - 1
            seen = _reach(self, v)
            comps.append(list(_bits(seen)))
            left &= ~seen
        return comps

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1
        return A

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(self.n)]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, graph6={self.to_graph6().decode()!r})"


def _reach(g: Graph, source: int) -> int:
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for x in _bits(frontier):
            nxt |= g.adj[x]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances; ``UNREACHABLE`` marks different components."""

    n: int
    d: np.ndarray = field(repr=False)

    def __getitem__(self, idx):
        return self.d[idx]

    def __eq__(self, other):
        return isinstance(other, DistanceMatrix) and np.array_equal(self.d, other.d)

    __hash__ = None


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """One bitset-frontier BFS per source."""
    n = g.n
    d = np.full((n, n), UNREACHABLE, dtype=np.int64)
    adj = g.adj
    for s in range(n):
        row = d[s]
        row[s] = 0
        seen = frontier = 1 << s
        level = 0
        while frontier:
            level += 1
            nxt = 0
            for x in _bits(frontier):
                nxt |= adj[x]
            frontier = nxt & ~seen
            seen |= frontier
            for x in _bits(frontier):
                row[x] = level
    d.flags.writeable = False
    return DistanceMatrix(n, d)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")


def distance_k_graph(g: Graph, k: int, dist: DistanceMatrix | None = None) -> Graph:
    """The graph on V(g) joining pairs at distance exactly ``k``."""
    _check_k(k)
    if k == 1:
        return g
    d = (dist or all_pairs_distances(g)).d
    rows = []
    for v in range(g.n):
        r = 0
        for u in np.flatnonzero(d[v] == k):
            r |= 1 << int(u)
        rows.append(r)
    return Graph(g.n, tuple(rows))


def k_distance_count(g: Graph, k: int, dist: DistanceMatrix | None = None) -> int:
    """Number of unordered pairs at distance exactly ``k``."""
    _check_k(k)
    d = (dist or all_pairs_distances(g)).d
    return int(np.count_nonzero(d == k)) // 2


def k_degree(g: Graph, k: int, v: int, dist: DistanceMatrix | None = None) -> int:
    _check_k(k)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    d = (dist or all_pairs_distances(g)).d
    return int(np.count_nonzero(d[v] == k))


def diameter(g: Graph, dist: DistanceMatrix | None = None) -> int:
    """Largest distance, or ``UNREACHABLE`` when ``g`` is disconnected."""
    d = (dist or all_pairs_distances(g)).d
    if (d == UNREACHABLE).any():
        return UNREACHABLE
    return int(d.max())


def is_triangle_free(g: Graph) -> bool:
    adj = g.adj
    for u in range(g.n):
        higher = adj[u] >> (u + 1) << (u + 1)
        for v in _bits(higher):
            if adj[u] & adj[v]:
                return False
    return True


def _color_bound(adj, cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``cand``; vertices in non-decreasing colour."""
    order, colors = [], []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~(1 << v) & ~adj[v]
            uncolored &= ~(1 << v)
            order.append(v)
            colors.append(color)
    return order, colors


def clique_number(g: Graph) -> int:
    """Maximum clique size by colour-bounded branch and bound."""
    adj = g.adj
    best = 1

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, colors = _color_bound(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= best:
                return
            v = order[i]
            new = cand & adj[v]
            if new:
                expand(size + 1, new)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand(0, g.full_mask)
    return best


def canonical_labeling_of(g: Graph) -> tuple[list[int], list[int]]:
    """``(lab, orbit)`` where ``lab[i]`` is the vertex given canonical label ``i``."""
    lab, orbit = canonical_labeling(g.adjacency_matrix())
    return [int(x) for x in lab], [int(x) for x in orbit]


def canonical_graph(g: Graph) -> Graph:
    lab, _ = canonical_labeling_of(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """graph6 line of the canonically relabeled graph; equal iff isomorphic."""
    return canonical_graph(g).to_graph6()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    return canonical_form(g) == canonical_form(h)


def k_isomorphic(g: Graph, h: Graph, k: int) -> bool:
    """True iff the distance-``k`` graphs of ``g`` and ``h`` are isomorphic."""
    _check_k(k)
    if g.n != h.n:
        return False
    return canonical_form(distance_k_graph(g, k)) == canonical_form(distance_k_graph(h, k))
