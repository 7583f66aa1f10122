"""Named graph families and their closed-form k-distance counts.

Vertex numbering is fixed so witnesses are reproducible: hub(s) first, then
handle vertices broom by broom (each handle listed outward from its hub),
then leaves broom by broom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph


@dataclass(frozen=True)
class BroomSpec:
    """A t-broom for distance ``k`` with ``leaf_counts[i]`` leaves on broom ``i``."""

    k: int
    leaf_counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaf_counts", tuple(int(a) for a in self.leaf_counts))
        if self.k < 3:
            raise ValueError(f"t-brooms need k >= 3, got k={self.k}")
        if len(self.leaf_counts) < 2:
            raise ValueError("a t-broom needs t >= 2 brooms")
        if min(self.leaf_counts) < 1:
            raise ValueError("every broom needs at least one leaf")

    @property
    def t(self) -> int:
        return len(self.leaf_counts)

    @property
    def handle_length(self) -> int:
        """Vertices on each handle, hub excluded."""
        return (self.k - 2) // 2 if self.k % 2 == 0 else (self.k - 3) // 2

    @property
    def hub_count(self) -> int:
        return 1 if self.k % 2 == 0 else self.t

    @property
    def n(self) -> int:
        return self.hub_count + self.t * self.handle_length + sum(self.leaf_counts)


def t_broom(spec: BroomSpec) -> Graph:
    """Even ``k``: one hub; odd ``k``: a clique of ``t`` hubs.

    Each hub carries a handle of ``handle_length`` vertices and its leaves
    hang off the far end, so leaves of different brooms are exactly ``k``
    apart.
    """
    t, h = spec.t, spec.handle_length
    hubs = spec.hub_count
    edges = []
    if hubs > 1:
        edges += list(combinations(range(hubs), 2))
    nxt = hubs
    ends = []
    for i in range(t):
        prev = 0 if hubs == 1 else i
        for _ in range(h):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        ends.append(prev)
    for i, a in enumerate(spec.leaf_counts):
        for _ in range(a):
            edges.append((ends[i], nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def broom_leaves(spec: BroomSpec) -> list[list[int]]:
    """Leaf vertices of each broom under the fixed numbering."""
    start = spec.hub_count + spec.t * spec.handle_length
    out = []
    for a in spec.leaf_counts:
        out.append(list(range(start, start + a)))
        start += a
    return out


def t_broom_distance_count(spec: BroomSpec) -> int:
    """Pairs of leaves in different brooms: sum over i < j of a_i * a_j."""
    s = sum(spec.leaf_counts)
    return (s * s - sum(a * a for a in spec.leaf_counts)) // 2


def balanced_leaves(total: int, t: int) -> tuple[int, ...]:
    """``total`` leaves split over ``t`` brooms as evenly as possible."""
    q, r = divmod(total, t)
    return (q + 1,) * r + (q,) * (t - r)


def broom_specs(n: int, k: int, t: int | None = None) -> list[BroomSpec]:
    """All t-brooms on exactly ``n`` vertices, one per leaf multiset."""
    specs = []
    ts = [t] if t is not None else range(2, n + 1)
    for tt in ts:
        hubs = 1 if k % 2 == 0 else tt
        h = (k - 2) // 2 if k % 2 == 0 else (k - 3) // 2
        leaves = n - hubs - tt * h
        if leaves < tt:
            continue
        for part in _partitions(leaves, tt, leaves):
            specs.append(BroomSpec(k, part))
    return specs


def _partitions(total: int, parts: int, largest: int):
    """Non-increasing ``parts``-tuples of positive integers summing to ``total``."""
    if parts == 1:
        if 1 <= total <= largest:
            yield (total,)
        return
    for first in range(min(total - parts + 1, largest), 0, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def best_broom(n: int, k: int) -> tuple[BroomSpec, int] | None:
    """Broom with the most k-distances among balanced t-brooms on ``n`` vertices."""
    best = None
    for t in range(2, n + 1):
        hubs = 1 if k % 2 == 0 else t
        h = (k - 2) // 2 if k % 2 == 0 else (k - 3) // 2
        leaves = n - hubs - t * h
        if leaves < t:
            continue
        spec = BroomSpec(k, balanced_leaves(leaves, t))
        c = t_broom_distance_count(spec)
        if best is None or c > best[1]:
            best = (spec, c)
    return best


def double_broom(n: int, k: int) -> Graph:
    """Path on ``k - 1`` vertices with the ``n - k + 1`` leaves split evenly
    between its two ends (the larger half on vertex 0)."""
    if k < 3:
        raise ValueError(f"double broom needs k >= 3, got {k}")
    if n <= k:
        raise ValueError(f"double broom needs n > k, got n={n}, k={k}")
    edges = [(i, i + 1) for i in range(k - 2)]
    leaves = n - k + 1
    left = (leaves + 1) // 2
    v = k - 1
    for _ in range(left):
        edges.append((0, v))
        v += 1
    for _ in range(leaves - left):
        edges.append((k - 2, v))
        v += 1
    return Graph.from_edges(n, edges)


def double_broom_count(n: int, k: int) -> int:
    if n <= k:
        raise ValueError(f"double broom needs n > k, got n={n}, k={k}")
    return (n - k + 1) ** 2 // 4


def glued_cliques(n: int) -> Graph:
    """Two cliques on (n+1)/2 vertices sharing ``z``; the edges ``xz`` and
    ``yz`` are swapped for ``xy``.

    X = {0..m-1}, Y = {m-1..n-1}, z = m-1, x = 0, y = n-1.
    """
    if n % 2 == 0 or n < 5:
        raise ValueError(f"glued cliques need odd n >= 5, got {n}")
    m = (n + 1) // 2
    z, x, y = m - 1, 0, n - 1
    edges = set(combinations(range(m), 2)) | set(combinations(range(m - 1, n), 2))
    edges -= {(x, z), (z, y)}
    edges.add((x, y))
    return Graph.from_edges(n, sorted(edges))


def star(n: int) -> Graph:
    if n < 2:
        raise ValueError("star needs n >= 2")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def path(n: int) -> Graph:
    if n < 2:
        raise ValueError("path needs n >= 2")
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


ODD_K_BROOM_WIDTH = 2


def optimal_broom_width(n: int, k: int) -> tuple[float, list[int]]:
    """Value x = 1/4 + sqrt(1/16 + (n-1)/(k-2)) and the integers t >= 2 with |t - x| <= 1.

    Only meaningful for even ``k``; for odd ``k`` the tree optimum always
    uses ``ODD_K_BROOM_WIDTH`` brooms.  Membership is decided exactly.
    """
    if k % 2:
        raise ValueError("optimal_broom_width is for even k; odd k uses t = 2")
    if k < 4 or n <= k:
        raise ValueError(f"need even k >= 4 and n > k, got n={n}, k={k}")
    q = Fraction(n - 1, k - 2)
    x = 0.25 + math.sqrt(1 / 16 + float(q))
    cands = [t for t in range(2, int(x) + 3) if within_one_of_width(t, n, k)]
    return x, cands


def within_one_of_width(t: int, n: int, k: int) -> bool:
    """Exact test of |t - (1/4 + sqrt(1/16 + (n-1)/(k-2)))| <= 1."""
    rad = Fraction(1, 16) + Fraction(n - 1, k - 2)
    lo = Fraction(t) + Fraction(3, 4)  # t >= x - 1  <=>  t + 3/4 >= sqrt(rad)
    if lo < 0 or lo * lo < rad:
        return False
    hi = Fraction(t) - Fraction(5, 4)  # t <= x + 1  <=>  t - 5/4 <= sqrt(rad)
    return hi <= 0 or hi * hi <= rad
