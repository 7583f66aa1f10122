"""Graph streams: connected graphs and free trees up to isomorphism, graph6 files.

Every stream hands out *units* of work in a fixed order.  A unit is a batch
of graphs (``int64`` bitset rows, one array per unit); the stream cursor is
the number of the next unit, so a consumer that records the cursor after
each unit can resume and see exactly the remaining suffix.

Connected graphs are produced by canonical-deletion vertex augmentation.
The graphs on ``split`` vertices (``split = min(n - 1, 7)``) are the units:
each unit expands independently into its descendants on ``n`` vertices, and
a shard ``(i, T)`` takes the units whose index is ``i`` mod ``T``.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import tempfile
from functools import lru_cache
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

from . import graph6 as _g6
from ._kernels import augment
from .graph import MAX_VERTICES, Graph

CONNECTED_MAX_N = 12
FREE_TREE_MAX_N = 18
SPLIT_LEVEL = 7
TREE_BATCH = 4096
GRAPH6_BATCH = 4096
CHECKPOINT_VERSION = 1


class EnvelopeError(ValueError):
    """Requested size lies outside the internal generator's envelope."""


class CheckpointError(ValueError):
    """Checkpoint unreadable or incompatible with the requested stream."""


def rows_to_graph(n: int, rows) -> Graph:
    return Graph(n, tuple(int(r) for r in rows))


def graphs_to_rows(graphs: Iterable[Graph]) -> np.ndarray:
    gs = list(graphs)
    return np.array([g.adj for g in gs], dtype=np.int64).reshape(len(gs), -1)


@lru_cache(maxsize=None)
def _connected_level(m: int) -> np.ndarray:
    """All connected graphs on ``m <= SPLIT_LEVEL`` vertices, canonical rows."""
    if m == 1:
        rows = np.zeros((1, 1), np.int64)
    else:
        rows, _ = augment(_connected_level(m - 1), m - 1)
    rows.flags.writeable = False
    return rows


def _fingerprint(rows: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(rows).tobytes()).hexdigest()[:16]


class GraphStream:
    """Single-consumer stream of graphs with a resumable cursor."""

    kind = "abstract"

    def __init__(self, start: int = 0):
        self.cursor = start

    def descriptor(self) -> dict:
        raise NotImplementedError

    def _units(self, start: int) -> Iterator[tuple[int, int, np.ndarray]]:
        raise NotImplementedError

    def batches(self) -> Iterator[tuple[int, np.ndarray]]:
        """Yield ``(n, rows)`` units, advancing ``cursor`` past each one."""
        for unit, n, rows in self._units(self.cursor):
            self.cursor = unit + 1
            yield n, rows

    def __iter__(self) -> Iterator[Graph]:
        for n, rows in self.batches():
            for r in rows:
                yield rows_to_graph(n, r)

    def checkpoint_state(self) -> dict:
        return {"stream": self.descriptor(), "cursor": self.cursor}


class ConnectedGraphStream(GraphStream):
    kind = "connected"

    def __init__(self, n: int, shard: tuple[int, int] = (0, 1), start: int = 0):
        if not 1 <= n <= CONNECTED_MAX_N:
            raise EnvelopeError(
                f"internal generator covers 1 <= n <= {CONNECTED_MAX_N}; "
                "use read_graph6_stream on an external generator's output instead"
            )
        index, total = shard
        if total < 1 or not 0 <= index < total:
            raise ValueError(f"bad shard {shard}")
        super().__init__(start)
        self.n = n
        self.shard = (index, total)
        self.split = max(1, min(n - 1, SPLIT_LEVEL))

    @property
    def unit_count(self) -> int:
        return len(_connected_level(self.split))

    def descriptor(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "shard": list(self.shard),
            "split": self.split,
            "fingerprint": _fingerprint(_connected_level(self.split)),
        }

    def _units(self, start):
        base = _connected_level(self.split)
        index, total = self.shard
        for unit in range(start, len(base)):
            if unit % total != index:
                continue
            batch = base[unit:unit + 1]
            for m in range(self.split, self.n):
                if len(batch) == 0:
                    break
                batch, _ = augment(batch, m)
            yield unit, self.n, batch


def connected_graphs(n: int, shard: tuple[int, int] = (0, 1), start: int = 0) -> ConnectedGraphStream:
    """Each connected graph on ``n`` vertices exactly once, in canonical form."""
    return ConnectedGraphStream(n, shard, start)


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Successor of a rooted-tree level sequence (Beyer-Hedetniemi step)."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split_left(seq: list[int]) -> tuple[list[int], list[int]]:
    """Left principal subtree of the root, and the rest of the tree."""
    m = len(seq)
    seen_one = False
    for i, x in enumerate(seq):
        if x == 1:
            if seen_one:
                m = i
                break
            seen_one = True
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _next_free(seq: list[int]) -> list[int] | None:
    """Smallest valid free-tree level sequence not below ``seq``."""
    left, rest = _split_left(seq)
    lh, rh = max(left), max(rest)
    valid = rh >= lh
    if valid and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            valid = False
    if valid:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if nxt is not None and seq[p] > 2:
        new_left, _ = _split_left(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def _level_sequences(n: int) -> Iterator[list[int]]:
    if n <= 2:
        yield list(range(n))
        return
    seq = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        if seq is not None:
            yield seq
            seq = _next_rooted(seq)


def level_sequence_rows(seq: list[int]) -> list[int]:
    """Bitset rows of the tree whose preorder depth sequence is ``seq``."""
    n = len(seq)
    rows = [0] * n
    stack: list[int] = []
    for v, depth in enumerate(seq):
        del stack[depth:]
        if stack:
            u = stack[-1]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        stack.append(v)
    return rows


class FreeTreeStream(GraphStream):
    kind = "free_trees"

    def __init__(self, n: int, start: int = 0):
        if not 1 <= n <= FREE_TREE_MAX_N:
            raise EnvelopeError(f"free-tree generator covers 1 <= n <= {FREE_TREE_MAX_N}")
        super().__init__(start)
        self.n = n

    def descriptor(self) -> dict:
        return {"kind": self.kind, "n": self.n, "batch": TREE_BATCH}

    def _units(self, start):
        batch: list[list[int]] = []
        unit = 0
        for seq in _level_sequences(self.n):
            batch.append(level_sequence_rows(seq))
            if len(batch) == TREE_BATCH:
                if unit >= start:
                    yield unit, self.n, np.array(batch, dtype=np.int64)
                unit += 1
                batch = []
        if batch and unit >= start:
            yield unit, self.n, np.array(batch, dtype=np.int64).reshape(len(batch), self.n)


def free_trees(n: int, start: int = 0) -> FreeTreeStream:
    """Each unlabeled tree on ``n`` vertices exactly once."""
    return FreeTreeStream(n, start)


class Graph6Error(_g6.Graph6Error):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph6Stream(GraphStream):
    """Graphs read from line-delimited graph6; units are runs of equal order."""

    kind = "graph6"

    def __init__(self, source, start: int = 0):
        super().__init__(start)
        self.source = source

    def descriptor(self) -> dict:
        src = self.source
        return {
            "kind": self.kind,
            "source": str(src) if isinstance(src, (str, os.PathLike)) else "<stream>",
        }

    def _lines(self) -> Iterator[tuple[int, bytes]]:
        src = self.source
        if isinstance(src, (str, os.PathLike)):
            with open(src, "rb") as fh:
                yield from enumerate(fh, start=1)
        elif isinstance(src, (bytes, bytearray)):
            yield from enumerate(io.BytesIO(src), start=1)
        else:
            for lineno, line in enumerate(src, start=1):
                yield lineno, line.encode("ascii") if isinstance(line, str) else line

    def parsed(self) -> Iterator[tuple[int, int, list[int]]]:
        """``(line number, n, rows)`` for every record, validating as it goes."""
        for lineno, raw in self._lines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith(_g6.HEADER):
                line = line[len(_g6.HEADER):]
                if not line:
                    continue
            try:
                n, rows = _g6.decode(line)
            except _g6.Graph6Error as exc:
                raise Graph6Error(str(exc), lineno) from None
            if n > MAX_VERTICES:
                raise Graph6Error(f"unsupported size n={n} (max {MAX_VERTICES})", lineno)
            if n < 1:
                raise Graph6Error("graph with no vertices", lineno)
            yield lineno, n, rows

    def _units(self, start):
        unit = 0
        cur_n = None
        batch: list[list[int]] = []
        for _, n, rows in self.parsed():
            if batch and (n != cur_n or len(batch) == GRAPH6_BATCH):
                if unit >= start:
                    yield unit, cur_n, np.array(batch, dtype=np.int64).reshape(len(batch), cur_n)
                unit += 1
                batch = []
            cur_n = n
            batch.append(rows)
        if batch and unit >= start:
            yield unit, cur_n, np.array(batch, dtype=np.int64).reshape(len(batch), cur_n)

    def __iter__(self) -> Iterator[Graph]:
        if self.cursor:
            yield from super().__iter__()
            return
        for _, n, rows in self.parsed():
            yield Graph(n, tuple(rows))


def read_graph6_stream(source, start: int = 0) -> Graph6Stream:
    """Graphs from a graph6 file path, bytes, or iterable of lines (no dedup)."""
    return Graph6Stream(source, start)


def write_graph6(graphs: Iterable[Graph], out: IO[bytes], header: bool = False) -> int:
    count = 0
    if header:
        out.write(_g6.HEADER)
    for g in graphs:
        out.write(g.to_graph6() + b"\n")
        count += 1
    return count


def save_checkpoint(path: str | os.PathLike, state: dict) -> None:
    """Atomically write a versioned checkpoint (temp file then rename)."""
    path = Path(path)
    payload = {"format": "kdist-checkpoint", "version": CHECKPOINT_VERSION, **state}
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str | os.PathLike, expect_stream: dict | None = None) -> dict:
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if payload.get("format") != "kdist-checkpoint":
        raise CheckpointError(f"{path} is not a kdist checkpoint")
    if payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"checkpoint version {payload.get('version')} != supported {CHECKPOINT_VERSION}"
        )
    if expect_stream is not None and payload.get("stream") != expect_stream:
        raise CheckpointError("checkpoint belongs to a different stream")
    return payload
