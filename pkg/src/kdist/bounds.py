"""Exact evaluation of the k-distance bounds and the edge decomposition identity.

Bound values are :class:`fractions.Fraction`; nothing is rounded.  The
Mantel-type bounds (``mantel``, ``interior``, ``unaffiliated``) are proved
only when the distance-k graph is triangle-free, so a report marks them not
applicable otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .graph import DistanceMatrix, Graph, all_pairs_distances, canonical_form, is_triangle_free, distance_k_graph
from .structure import unaffiliated_counts

BOUND_NAMES = ("mantel", "interior", "unaffiliated", "unaffiliated_midpoint", "star")


class DisconnectedGraphError(ValueError):
    """The edge decomposition identity needs a connected graph."""


def mantel_k_bound(n: int, k: int) -> Fraction:
    """n(n - k + 1)/4."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > n:
        raise ValueError(f"need k <= n, got n={n}, k={k}")
    return Fraction(n * (n - k + 1), 4)


def interior_refined_bound(n: int, k: int, r: int) -> Fraction:
    """(n - r)(n - k + 1)/4 for a graph with at least ``r`` interior vertices."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    return Fraction((n - r) * (n - k + 1), 4)


def unaffiliated_bound(n: int, r: int, p: int) -> Fraction:
    """(n - r)(n - p)/4 when every k-distance has ``p`` unaffiliated vertices."""
    if not (0 <= r <= n and 0 <= p <= n):
        raise ValueError(f"need 0 <= r, p <= n, got r={r}, p={p}, n={n}")
    return Fraction((n - r) * (n - p), 4)


def unaffiliated_midpoint_bound(n: int, r: int, p: int) -> Fraction:
    """(n - (r + p)/2)^2 / 4, the weaker symmetric form."""
    if not (0 <= r <= n and 0 <= p <= n):
        raise ValueError(f"need 0 <= r, p <= n, got r={r}, p={p}, n={n}")
    return (Fraction(n) - Fraction(r + p, 2)) ** 2 / 4


def star_bound(n: int) -> int:
    """C(n - 1, 2), the most pairs at distance 2 any n-vertex graph has."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    return comb(n - 1, 2)


def distance_histogram(d: np.ndarray) -> np.ndarray:
    """``h[i]`` = number of unordered pairs at distance ``i`` (finite only)."""
    iu = np.triu_indices(d.shape[0], 1)
    vals = d[iu]
    vals = vals[vals > 0]
    return np.bincount(vals, minlength=max(2, d.shape[0]))


def edge_decomposition_check(g: Graph, dist: DistanceMatrix | None = None) -> bool:
    """C(n, 2) = e(G) + e(G_2) + ... + e(G_diam) for connected ``g``."""
    if not g.is_connected():
        raise DisconnectedGraphError("edge decomposition needs a connected graph")
    d = (dist or all_pairs_distances(g)).d
    hist = distance_histogram(d)
    return int(hist.sum()) == comb(g.n, 2) and int(hist[1]) == g.num_edges()


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    n: int
    k: int
    e_gk: int
    r: int
    p: int | None
    triangle_free: bool
    bounds: dict = field(default_factory=dict)
    satisfied: dict = field(default_factory=dict)

    def recompute_satisfied(self) -> dict:
        return {
            name: None if value is None or not self._applies(name) else self.e_gk <= value
            for name, value in self.bounds.items()
        }

    def _applies(self, name: str) -> bool:
        return name == "star" or self.triangle_free

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_id,
            "n": self.n,
            "k": self.k,
            "e_gk": self.e_gk,
            "r": self.r,
            "p": self.p,
            "triangle_free": self.triangle_free,
            "bounds": {name: None if v is None else str(v) for name, v in self.bounds.items()},
            "satisfied": {
                name: "not applicable" if ok is None else ok for name, ok in self.satisfied.items()
            },
        }


def bound_values(n: int, k: int, r: int, p: int | None) -> dict:
    vals: dict = dict.fromkeys(BOUND_NAMES)
    if k <= n:
        vals["mantel"] = mantel_k_bound(n, k)
        vals["interior"] = interior_refined_bound(n, k, r)
    if p is not None:
        vals["unaffiliated"] = unaffiliated_bound(n, r, p)
        vals["unaffiliated_midpoint"] = unaffiliated_midpoint_bound(n, r, p)
    if k == 2 and n >= 3:
        vals["star"] = Fraction(star_bound(n))
    return vals


def evaluate_bounds(g: Graph, k: int, dist: DistanceMatrix | None = None) -> BoundReport:
    """e(G_k), interior count r, least unaffiliated count p, and every bound."""
    dm = dist or all_pairs_distances(g)
    d = dm.d
    mask = d == k
    e = int(mask.sum()) // 2
    r = int((~mask.any(axis=1)).sum())
    counts = unaffiliated_counts(d, k)
    p = int(counts.min()) if counts.size else None
    tri_free = is_triangle_free(distance_k_graph(g, k, dm))
    values = bound_values(g.n, k, r, p)
    report = BoundReport(canonical_form(g).decode(), g.n, k, e, r, p, tri_free, values, {})
    object.__setattr__(report, "satisfied", report.recompute_satisfied())
    return report
