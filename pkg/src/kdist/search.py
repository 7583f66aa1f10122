"""Extremal searches over graph streams and the verification suites built on them.

A scan keeps, for every ``k`` at once, the largest number of k-distances
seen among admissible graphs and every graph attaining it.  Partial results
from disjoint shards merge by (max, union of maximizers), so the outcome
does not depend on how the stream was split.
"""

from __future__ import annotations

import csv
import io
import multiprocessing
import os
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from ._version import __version__
from ._kernels import bound_profile, canonical_rows_batch, distance_profile
from .enumeration import (
    Graph6Stream,
    GraphStream,
    connected_graphs,
    free_trees,
    load_checkpoint,
    rows_to_graph,
    save_checkpoint,
)
from .families import (
    BroomSpec,
    best_broom,
    broom_specs,
    double_broom,
    double_broom_count,
    glued_cliques,
    star,
    t_broom,
    within_one_of_width,
)
from .graph import Graph, canonical_form, clique_number, distance_k_graph
from .structure import interior_vertices, lemma_holds_for_length, spanning_tree_profile

SCHEMA_VERSION = 1
CHECKPOINT_EVERY = 10**6
COMPOSED_WITNESS_CAP = 2000
SCOPES = ("connected", "all")


@dataclass(frozen=True)
class SearchTask:
    n: int
    k: int
    clique_cap: int | None = None
    scope: str = "connected"
    source: str = "internal"
    shards: int = 1
    shard_index: int | None = None
    checkpoint: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"searches need k >= 2, got {self.k}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.clique_cap is not None and self.clique_cap < 2:
            raise ValueError(f"clique cap must be >= 2, got {self.clique_cap}")
        if self.scope not in SCOPES:
            raise ValueError(f"scope must be one of {SCOPES}")
        if self.shards < 1:
            raise ValueError("need at least one shard")
        if self.shard_index is not None and not 0 <= self.shard_index < self.shards:
            raise ValueError(f"shard index {self.shard_index} outside 0..{self.shards - 1}")
        if self.scope == "all" and self.source not in ("internal",):
            raise ValueError("scope 'all' composes internal connected tables; use scope 'connected'")
        if self.scope == "all" and self.shard_index is not None:
            raise ValueError("scope 'all' needs every shard")

    @property
    def cap_arg(self) -> int:
        return self.clique_cap or 0


class _Partial:
    """Running maxima and maximizers (bitset rows) per k for one stream."""

    def __init__(self, n: int):
        self.n = n
        self.scanned = 0
        self.best = np.full(n + 1, -1, np.int64)
        self.rows: list[list[np.ndarray]] = [[] for _ in range(n + 1)]

    def add(self, rows: np.ndarray, ek: np.ndarray, ok: np.ndarray, canonical: bool) -> None:
        self.scanned += len(rows)
        vals = np.where(ok, ek, -1)
        top = vals.max(axis=0)
        for k in range(1, self.n + 1):
            m = top[k]
            if m < 0 or m < self.best[k]:
                continue
            hit = rows[vals[:, k] == m]
            if not canonical:
                hit = canonical_rows_batch(hit, self.n)
            if m > self.best[k]:
                self.best[k] = m
                self.rows[k] = []
            self.rows[k].append(hit)

    def merge(self, other: "_Partial") -> None:
        self.scanned += other.scanned
        for k in range(1, self.n + 1):
            if other.best[k] > self.best[k]:
                self.best[k] = other.best[k]
                self.rows[k] = list(other.rows[k])
            elif other.best[k] == self.best[k] >= 0:
                self.rows[k].extend(other.rows[k])

    def witnesses(self, k: int) -> np.ndarray:
        if not self.rows[k]:
            return np.zeros((0, self.n), np.int64)
        return np.unique(np.concatenate(self.rows[k]), axis=0)

    def to_state(self) -> dict:
        return {
            "n": self.n,
            "scanned": self.scanned,
            "best": [int(b) for b in self.best],
            "rows": [self.witnesses(k).tolist() if k else [] for k in range(self.n + 1)],
        }

    @classmethod
    def from_state(cls, state: dict) -> "_Partial":
        p = cls(state["n"])
        p.scanned = state["scanned"]
        p.best = np.array(state["best"], np.int64)
        p.rows = [
            [np.array(r, np.int64).reshape(len(r), p.n)] if r else [] for r in state["rows"]
        ]
        return p


def _scan(stream: GraphStream, n: int, cap: int, canonical: bool,
          checkpoint: str | None = None, every: int = CHECKPOINT_EVERY) -> _Partial:
    partial = _Partial(n)
    if checkpoint and os.path.exists(checkpoint):
        state = load_checkpoint(checkpoint, expect_stream=stream.descriptor())
        partial = _Partial.from_state(state["partial"])
        stream.cursor = state["cursor"]
    since = 0
    for m, rows in stream.batches():
        if m == n and len(rows):
            ek, ok = distance_profile(rows, n, cap)
            partial.add(rows, ek, ok, canonical)
            since += len(rows)
        if checkpoint and since >= every:
            save_checkpoint(checkpoint, {**stream.checkpoint_state(), "partial": partial.to_state()})
            since = 0
    if checkpoint:
        save_checkpoint(checkpoint, {**stream.checkpoint_state(), "partial": partial.to_state()})
    return partial


def _shard_checkpoint(path: str | None, index: int, total: int) -> str | None:
    if path is None or total == 1:
        return path
    return f"{path}.{index}-of-{total}"


def _scan_shard(args) -> tuple[int, _Partial, int]:
    n, cap, index, total, checkpoint = args
    stream = connected_graphs(n, (index, total))
    partial = _scan(stream, n, cap, True, _shard_checkpoint(checkpoint, index, total))
    return index, partial, stream.cursor


def _scan_connected(n: int, cap: int, shards: int, indices: Sequence[int],
                    checkpoint: str | None, threads: int) -> tuple[_Partial, list[dict]]:
    jobs = [(n, cap, i, shards, checkpoint) for i in indices]
    if threads > 1 and len(jobs) > 1:
        with multiprocessing.get_context("fork").Pool(min(threads, len(jobs))) as pool:
            results = pool.map(_scan_shard, jobs)
    else:
        results = [_scan_shard(j) for j in jobs]
    merged = _Partial(n)
    provenance = []
    for index, partial, cursor in sorted(results, key=lambda r: r[0]):
        merged.merge(partial)
        provenance.append({"index": index, "total": shards, "graphs_scanned": partial.scanned,
                           "cursor": cursor})
    return merged, provenance


@lru_cache(maxsize=None)
def connected_table(n: int, cap: int, shards: int = 1) -> _Partial:
    """Maxima and maximizers over all connected ``n``-vertex graphs, every k."""
    partial, _ = _scan_connected(n, cap, shards, range(shards), None, 1)
    return partial


@lru_cache(maxsize=None)
def tree_table(n: int) -> _Partial:
    """Maxima and maximizers (canonical rows) over all trees on ``n`` vertices."""
    return _scan(free_trees(n), n, 0, False)


def compose_disconnected_max(table, n: int, k: int, clique_cap: int | None = None) -> int:
    """Best count over all ``n``-vertex graphs from per-size connected maxima.

    ``table[m]`` is the best count over connected graphs on ``m`` vertices
    (already restricted to the clique cap, which is a per-component
    condition).  Counts add over components.
    """
    missing = [m for m in range(1, n + 1) if m not in table]
    if missing:
        raise ValueError(f"connected table lacks sizes {missing} (k={k}, cap={clique_cap})")
    best = [0] * (n + 1)
    for m in range(1, n + 1):
        best[m] = max(table[a] + best[m - a] for a in range(1, m + 1))
    return best[n]


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _composed_witnesses(n: int, k: int, cap: int, target: int, cap_count: int) -> tuple[list[Graph], bool, bool]:
    """Disconnected graphs reaching ``target``; (graphs, any exist, truncated)."""
    tables = {m: connected_table(m, cap) for m in range(1, n)}
    value = {m: max(int(tables[m].best[k]), 0) if k <= m else 0 for m in tables}
    parts_found = [p for p in _partitions(n) if len(p) > 1 and sum(value[q] for q in p) == target]

    def pool(size: int) -> list[Graph]:
        rows = tables[size].witnesses(k) if k <= size else _all_connected_rows(size)
        return [rows_to_graph(size, r) for r in rows]

    def fill(parts: tuple[int, ...], lo: int, acc: Graph | None):
        # components of equal size are taken in non-decreasing pool order
        if not parts:
            yield acc
            return
        size = parts[0]
        same_as_prev = lo >= 0
        cands = pool(size)
        for i in range(lo if same_as_prev else 0, len(cands)):
            nxt = parts[1:]
            g = cands[i] if acc is None else acc.disjoint_union(cands[i])
            yield from fill(nxt, i if nxt and nxt[0] == size else -1, g)

    out: list[Graph] = []
    truncated = False
    for parts in parts_found:
        for g in fill(parts, -1, None):
            if len(out) >= cap_count:
                truncated = True
                break
            out.append(g)
        if truncated:
            break
    return out, bool(parts_found), truncated


@lru_cache(maxsize=None)
def _all_connected_rows(size: int) -> np.ndarray:
    return np.concatenate([b for _, b in connected_graphs(size).batches()])


@lru_cache(maxsize=None)
def _broom_forms(n: int, k: int) -> tuple[dict, dict]:
    """Canonical forms of each t-broom on n vertices and of its distance-k graph."""
    graph_forms: dict[bytes, list[BroomSpec]] = {}
    gk_forms: dict[bytes, list[BroomSpec]] = {}
    if k < 3:
        return graph_forms, gk_forms
    for spec in broom_specs(n, k):
        g = t_broom(spec)
        graph_forms.setdefault(canonical_form(g), []).append(spec)
        gk_forms.setdefault(canonical_form(distance_k_graph(g, k)), []).append(spec)
    return graph_forms, gk_forms


@lru_cache(maxsize=None)
def _double_broom_gk(n: int, k: int) -> bytes | None:
    if k < 3 or n <= k:
        return None
    return canonical_form(distance_k_graph(double_broom(n, k), k))


def classify_witness(g: Graph, k: int) -> dict:
    n = g.n
    graph_forms, gk_forms = _broom_forms(n, k)
    cf = canonical_form(g)
    gkf = canonical_form(distance_k_graph(g, k))
    db = _double_broom_gk(n, k)
    return {
        "graph6": cf.decode(),
        "connected": g.is_connected(),
        "double_broom_k_isomorphic": None if db is None else gkf == db,
        "t_broom_isomorphic": [list(s.leaf_counts) for s in graph_forms.get(cf, [])],
        "t_broom_k_isomorphic": [list(s.leaf_counts) for s in gk_forms.get(gkf, [])],
    }


@dataclass
class SearchReport:
    task: dict
    graphs_scanned: int
    max_e_gk: int | None
    witnesses: list[str]
    witness_classification: list[dict]
    disconnected_attains: bool
    witnesses_truncated: bool
    best_broom: dict | None
    double_broom_count: int | None
    shards: list[dict]
    elapsed_seconds: float = 0.0
    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__

    def deterministic_dict(self) -> dict:
        d = asdict(self)
        d.pop("elapsed_seconds")
        return d

    def result_dict(self) -> dict:
        """Fields that must not depend on sharding or threading."""
        return {
            "max_e_gk": self.max_e_gk,
            "witnesses": self.witnesses,
            "witness_classification": self.witness_classification,
            "disconnected_attains": self.disconnected_attains,
        }

    def to_dict(self) -> dict:
        return asdict(self)


def verify_report_witnesses(report: dict) -> bool:
    """Reload every witness and recheck its count and clique constraint."""
    task = report["task"]
    k, cap = task["k"], task["clique_cap"]
    for g6 in report["witnesses"]:
        g = Graph.from_graph6(g6.encode())
        gk = distance_k_graph(g, k)
        if gk.num_edges() != report["max_e_gk"]:
            return False
        if cap is not None and clique_number(gk) > cap:
            return False
    return True


def max_k_distances(task: SearchTask) -> SearchReport:
    """Largest number of k-distances over the task's graphs, with every maximizer."""
    t0 = time.perf_counter()
    n, k, cap = task.n, task.k, task.cap_arg
    if task.source == "internal":
        indices = range(task.shards) if task.shard_index is None else [task.shard_index]
        if task.checkpoint is None and task.shard_index is None:
            partial = connected_table(n, cap, task.shards)
            provenance = [{"index": i, "total": task.shards} for i in indices]
        else:
            partial, provenance = _scan_connected(n, cap, task.shards, indices,
                                                  task.checkpoint, task.threads)
    elif task.source == "trees":
        partial = tree_table(n)
        provenance = [{"index": 0, "total": 1}]
    else:
        stream = Graph6Stream(task.source)
        partial = _scan(stream, n, cap, False, task.checkpoint)
        provenance = [{"index": 0, "total": 1, "cursor": stream.cursor}]
    best = int(partial.best[k]) if k <= n and partial.best[k] >= 0 else None
    graphs = [rows_to_graph(n, r) for r in partial.witnesses(k)] if best is not None else []
    disconnected = truncated = False
    if task.scope == "all" and n > 1:
        table = {m: max(int(connected_table(m, cap).best[k]), 0) if k <= m else 0
                 for m in range(1, n)}
        table[n] = best if best is not None else 0
        overall = compose_disconnected_max(table, n, k, task.clique_cap)
        if best is None or overall > best:
            graphs = []
        best = overall
        extra, disconnected, truncated = _composed_witnesses(
            n, k, cap, overall, COMPOSED_WITNESS_CAP)
        graphs += extra
    forms = sorted({canonical_form(g) for g in graphs})
    by_form = {canonical_form(g): g for g in graphs}
    classification = [classify_witness(by_form[f], k) for f in forms]
    bb = best_broom(n, k) if k >= 3 else None
    return SearchReport(
        task=asdict(task),
        graphs_scanned=int(partial.scanned),
        max_e_gk=best,
        witnesses=[f.decode() for f in forms],
        witness_classification=classification,
        disconnected_attains=disconnected,
        witnesses_truncated=truncated,
        best_broom=None if bb is None else {"leaf_counts": list(bb[0].leaf_counts), "count": bb[1]},
        double_broom_count=double_broom_count(n, k) if k >= 3 and n > k else None,
        shards=provenance,
        elapsed_seconds=round(time.perf_counter() - t0, 3),
    )


@dataclass
class ConjectureReport:
    name: str
    grid: list[dict]
    cells: list[dict] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__

    @property
    def mismatches(self) -> list[dict]:
        return [c for c in self.cells if not c["match"]]

    @property
    def verdict(self) -> str:
        return "consistent" if not self.mismatches else "counterexample found"

    @property
    def counterexamples(self) -> list[dict]:
        return [{"params": c["params"], "witnesses": c["witnesses"]} for c in self.mismatches]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "grid": self.grid,
            "verdict": self.verdict,
            "cells": self.cells,
            "counterexamples": self.counterexamples,
        }


def _cell(params: dict, observed, predicted, match: bool, witnesses: list[str], **extra) -> dict:
    return {
        "params": params,
        "observed": observed,
        "predicted": str(predicted) if isinstance(predicted, Fraction) else predicted,
        "match": bool(match),
        "witnesses": witnesses,
        **extra,
    }


def _triangle_free_claimed(n: int, k: int) -> bool:
    return (k == 3 and n >= 8) or (k >= 4 and n >= k + 1)


def verify_triangle_free_conjecture(k: int, n_range: Iterable[int]) -> ConjectureReport:
    """With no three vertices pairwise at distance k, is the maximum
    floor((n-k+1)^2/4), reached only by graphs k-isomorphic to the double broom?"""
    ns = list(n_range)
    rep = ConjectureReport("triangle-free", [{"k": k, "n": n} for n in ns])
    for n in ns:
        if n < k + 1:
            raise ValueError(f"need n >= k + 1, got n={n}, k={k}")
        sr = max_k_distances(SearchTask(n, k, clique_cap=2, scope="all"))
        predicted = double_broom_count(n, k)
        all_db = all(c["double_broom_k_isomorphic"] for c in sr.witness_classification)
        rep.cells.append(_cell(
            {"n": n, "k": k, "clique_cap": 2}, sr.max_e_gk, predicted,
            sr.max_e_gk == predicted and all_db, sr.witnesses,
            all_witnesses_double_broom=all_db,
            claimed=_triangle_free_claimed(n, k),
            expected_exception=(n, k) == (7, 3),
            disconnected_attains=sr.disconnected_attains,
        ))
    return rep


def verify_k2_bound(n_range: Iterable[int]) -> ConjectureReport:
    """Distance-2 graphs without triangles: at most (n-1)^2/4 + 1 edges."""
    ns = list(n_range)
    rep = ConjectureReport("k2-bound", [{"n": n} for n in ns])
    for n in ns:
        if n < 5:
            raise ValueError(f"need n >= 5, got {n}")
        sr = max_k_distances(SearchTask(n, 2, clique_cap=2, scope="all"))
        bound = Fraction((n - 1) ** 2, 4) + 1
        extra = {}
        ok = sr.max_e_gk <= bound
        if n % 2:
            gc = glued_cliques(n)
            gc2 = distance_k_graph(gc, 2)
            attains = gc2.num_edges() == sr.max_e_gk and clique_number(gc2) <= 2
            extra["glued_cliques_attains"] = attains
            ok = ok and attains and sr.max_e_gk == bound
        rep.cells.append(_cell({"n": n, "k": 2, "clique_cap": 2}, sr.max_e_gk, bound, ok,
                               sr.witnesses, **extra))
    return rep


def verify_tree_theorem(n_range: Iterable[int], k_range: Iterable[int]) -> ConjectureReport:
    """Over all trees, some maximizer is a t-broom of the predicted width."""
    ns, ks = list(n_range), list(k_range)
    grid = [{"n": n, "k": k} for n in ns for k in ks if 3 <= k <= n - 1]
    rep = ConjectureReport("tree-theorem", grid)
    for cell in grid:
        n, k = cell["n"], cell["k"]
        sr = max_k_distances(SearchTask(n, k, source="trees"))
        brooms = [(c["graph6"], s) for c in sr.witness_classification for s in c["t_broom_isomorphic"]]
        if k % 2:
            good = [b for b in brooms if len(b[1]) == 2]
        else:
            good = [b for b in brooms if within_one_of_width(len(b[1]), n, k)]
        rep.cells.append(_cell(
            cell, sr.max_e_gk, "attained by a t-broom of the predicted width", bool(good),
            sr.witnesses, broom_witnesses=[list(s) for _, s in brooms],
            qualifying_brooms=[list(s) for _, s in good],
        ))
    return rep


def verify_star_proposition(n_range: Iterable[int]) -> ConjectureReport:
    """Max distance-2 count over all graphs is C(n-1, 2), attained only by the star."""
    ns = list(n_range)
    rep = ConjectureReport("star", [{"n": n} for n in ns])
    for n in ns:
        if n < 3:
            raise ValueError(f"need n >= 3, got {n}")
        sr = max_k_distances(SearchTask(n, 2, scope="all"))
        predicted = comb(n - 1, 2)
        only_star = sr.witnesses == [canonical_form(star(n)).decode()]
        rep.cells.append(_cell({"n": n, "k": 2}, sr.max_e_gk, predicted,
                               sr.max_e_gk == predicted and only_star, sr.witnesses,
                               unique_star=only_star))
    return rep


def proved_bound_violations(rows: np.ndarray, n: int) -> list[dict]:
    """Check the Mantel-type bounds and the distance decomposition on a batch.

    Every comparison is done in integers after clearing the denominator 4
    (or 16 for the midpoint form), so it is exact.
    """
    ek, tri, interior, pmin, pairs = bound_profile(rows, n)
    out = []
    edges = np.array([sum(bin(int(x)).count("1") for x in r) // 2 for r in rows])
    bad = np.flatnonzero((pairs != comb(n, 2)) | (ek[:, 1] != edges))
    for i in bad:
        out.append({"graph": rows_to_graph(n, rows[i]).to_graph6().decode(), "k": None,
                    "bound": "decomposition"})
    for k in range(2, n):
        e, r, p = ek[:, k], interior[:, k], pmin[:, k]
        act = tri[:, k]
        checks = {
            "mantel": 4 * e <= n * (n - k + 1),
            "interior": 4 * e <= (n - r) * (n - k + 1),
            "unaffiliated": (p < 0) | (4 * e <= (n - r) * (n - p)),
            "unaffiliated_midpoint": (p < 0) | (16 * e <= (2 * n - r - p) ** 2),
        }
        for name, okv in checks.items():
            for i in np.flatnonzero(act & ~okv):
                out.append({"graph": rows_to_graph(n, rows[i]).to_graph6().decode(), "k": k,
                            "bound": name})
    return out


def verify_proved_bounds(n_range: Iterable[int]) -> ConjectureReport:
    """Zero violations expected: these bounds are theorems."""
    ns = list(n_range)
    rep = ConjectureReport("bounds", [{"n": n} for n in ns])
    for n in ns:
        scanned = checked = 0
        violations: list[dict] = []
        for _, rows in connected_graphs(n).batches():
            scanned += len(rows)
            violations += proved_bound_violations(rows, n)
            _, tri, _, _, _ = bound_profile(rows, n)
            checked += int(tri[:, 2:n].sum())
        rep.cells.append(_cell({"n": n}, len(violations), 0, not violations,
                               sorted({v["graph"] for v in violations}),
                               graphs_scanned=scanned, triangle_free_instances=checked,
                               violations=violations[:50]))
    return rep


def verify_spanning_tree_lemma(n_range: Iterable[int]) -> ConjectureReport:
    """Every spanning tree of a graph with at most r interior vertices has no
    path on r+1 vertices, or one on at least 2k-r vertices."""
    ns = list(n_range)
    rep = ConjectureReport("lemma8", [{"n": n} for n in ns])
    for n in ns:
        graphs = trees = instances = 0
        violations = []
        for g in connected_graphs(n):
            graphs += 1
            prof = None
            for k in range(2, n):
                interior = len(interior_vertices(g, k))
                for r in range(max(2, interior), n):
                    if prof is None:
                        prof = spanning_tree_profile(g)
                        trees += prof.trees
                    instances += 1
                    for length, tree in prof.examples.items():
                        if not lemma_holds_for_length(length, k, r):
                            violations.append({"graph": canonical_form(g).decode(), "k": k,
                                               "r": r, "tree": [list(e) for e in tree]})
                            break
        rep.cells.append(_cell({"n": n}, len(violations), 0, not violations,
                               sorted({v["graph"] for v in violations}),
                               graphs_scanned=graphs, spanning_trees=trees,
                               instances=instances, violations=violations[:50]))
    return rep


def summary_csv(report: ConjectureReport) -> str:
    """One row per cell keyed by (n, k, clique cap)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "n", "k", "clique_cap", "observed", "predicted", "match", "witnesses"])
    for c in report.cells:
        p = c["params"]
        w.writerow([report.name, p.get("n"), p.get("k"), p.get("clique_cap"), c["observed"],
                    c["predicted"], c["match"], len(c["witnesses"])])
    return buf.getvalue()


def search_csv(report: SearchReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    t = report.task
    w.writerow(["n", "k", "clique_cap", "scope", "graphs_scanned", "max_e_gk", "witnesses"])
    w.writerow([t["n"], t["k"], t["clique_cap"], t["scope"], report.graphs_scanned,
                report.max_e_gk, len(report.witnesses)])
    return buf.getvalue()
