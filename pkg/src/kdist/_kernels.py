"""Compiled inner loops for enumeration and scanning.

Graphs travel through these kernels as ``int64`` bitset rows, one row per
vertex, so they are limited to ``n <= 62``; the enumeration envelope is far
below that.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._canon import canonical_labeling, relabeled_rows, rows_to_matrix

ONE = np.int64(1)


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _connected_without(rows, n, skip):
    """Is the graph minus vertex ``skip`` connected?"""
    mask = ((ONE << np.int64(n)) - 1) & ~(ONE << np.int64(skip))
    start = 0 if skip != 0 else 1
    seen = ONE << np.int64(start)
    frontier = seen
    while frontier:
        nxt = np.int64(0)
        for x in range(n):
            if (frontier >> np.int64(x)) & ONE:
                nxt |= rows[x]
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen == mask


@njit(cache=True)
def _code(rows, n):
    """Upper-triangle bit code split across two 62-bit words."""
    lo = np.int64(0)
    hi = np.int64(0)
    for j in range(1, n):
        r = rows[j]
        base = j * (j - 1) // 2
        for i in range(j):
            if (r >> np.int64(i)) & ONE:
                idx = base + i
                if idx < 62:
                    lo |= ONE << np.int64(idx)
                else:
                    hi |= ONE << np.int64(idx - 62)
    return lo, hi


@njit(cache=True)
def augment(parents, m):
    """Connected children on ``m + 1`` vertices of canonical connected parents.

    Canonical deletion: the child ``X = P + v`` is kept iff deleting the
    canonically chosen non-cut vertex of ``X`` gives back ``P`` (up to
    isomorphism).  That vertex is the non-cut vertex of least
    (degree, neighbour-degree-sum), ties broken by largest canonical position.
    Isomorphic children of one parent are merged locally.  Returns canonical
    child rows and, for each child, the index of its parent.
    """
    n = m + 1
    np_ = parents.shape[0]
    cap = 1024
    out = np.empty((cap, n), np.int64)
    out_parent = np.empty(cap, np.int64)
    count = 0

    rows = np.empty(n, np.int64)
    deg = np.empty(n, np.int64)
    inv = np.empty(n, np.int64)
    ties = np.empty(n, np.int64)
    pos = np.empty(n, np.int64)
    sub = np.empty(m, np.int64)
    seen_lo = np.empty(1 << m, np.int64)
    seen_hi = np.empty(1 << m, np.int64)

    for pi in range(np_):
        prow = parents[pi]
        nseen = 0
        for S in range(1, 1 << m):
            for u in range(m):
                rows[u] = prow[u] | (((np.int64(S) >> np.int64(u)) & ONE) << np.int64(m))
            rows[m] = np.int64(S)
            for u in range(n):
                deg[u] = _popcount(rows[u])
            for u in range(n):
                s = np.int64(0)
                r = rows[u]
                for x in range(n):
                    if (r >> np.int64(x)) & ONE:
                        s += deg[x]
                inv[u] = deg[u] * 4096 + s
            iv = inv[m]
            reject = False
            nt = 1
            ties[0] = m
            for u in range(m):
                if inv[u] < iv:
                    if _connected_without(rows, n, u):
                        reject = True
                        break
                elif inv[u] == iv:
                    if _connected_without(rows, n, u):
                        ties[nt] = u
                        nt += 1
            if reject:
                continue
            A = rows_to_matrix(rows, n)
            lab, orbit = canonical_labeling(A)
            if nt > 1:
                for i in range(n):
                    pos[lab[i]] = i
                w = ties[0]
                for i in range(1, nt):
                    if pos[ties[i]] > pos[w]:
                        w = ties[i]
                if w != m and orbit[w] != orbit[m]:
                    j = 0
                    for u in range(n):
                        if u == w:
                            continue
                        r = np.int64(0)
                        ru = rows[u]
                        jj = 0
                        for x in range(n):
                            if x == w:
                                continue
                            if (ru >> np.int64(x)) & ONE:
                                r |= ONE << np.int64(jj)
                            jj += 1
                        sub[j] = r
                        j += 1
                    B = rows_to_matrix(sub, m)
                    lab2, _ = canonical_labeling(B)
                    crow = relabeled_rows(B, lab2)
                    same = True
                    for i in range(m):
                        if crow[i] != prow[i]:
                            same = False
                            break
                    if not same:
                        continue
            child = relabeled_rows(A, lab)
            lo, hi = _code(child, n)
            dup = False
            for i in range(nseen):
                if seen_lo[i] == lo and seen_hi[i] == hi:
                    dup = True
                    break
            if dup:
                continue
            seen_lo[nseen] = lo
            seen_hi[nseen] = hi
            nseen += 1
            if count == cap:
                cap *= 2
                grown = np.empty((cap, n), np.int64)
                grown[:count] = out[:count]
                out = grown
                grown_p = np.empty(cap, np.int64)
                grown_p[:count] = out_parent[:count]
                out_parent = grown_p
            out[count] = child
            out_parent[count] = pi
            count += 1
    return out[:count].copy(), out_parent[:count].copy()


@njit(cache=True)
def canonical_rows_batch(batch, n):
    """Canonical relabeling of every graph in a batch of bitset rows."""
    out = np.empty_like(batch)
    for g in range(batch.shape[0]):
        A = rows_to_matrix(batch[g], n)
        lab, _ = canonical_labeling(A)
        out[g] = relabeled_rows(A, lab)
    return out


@njit(cache=True)
def _has_clique(rk, n, size):
    """Does the graph with rows ``rk`` contain a clique on ``size`` vertices?"""
    if size <= 1:
        return n >= size
    stackP = np.empty(n * n + 1, np.int64)
    stackD = np.empty(n * n + 1, np.int64)
    top = 0
    stackP[0] = (ONE << np.int64(n)) - 1
    stackD[0] = 0
    top = 1
    while top > 0:
        top -= 1
        P = stackP[top]
        d = stackD[top]
        if d >= size:
            return True
        if d + _popcount(P) < size:
            continue
        v = 0
        while not (P >> np.int64(v)) & ONE:
            v += 1
        stackP[top] = P & ~(ONE << np.int64(v))
        stackD[top] = d
        top += 1
        stackP[top] = P & rk[v]
        stackD[top] = d + 1
        top += 1
    return False


@njit(cache=True)
def distance_profile(batch, n, cap):
    """Per graph and per ``k``: number of ``k``-distances and admissibility.

    ``ek[g, k]`` counts pairs at distance ``k`` (column 0 is unused).
    ``ok[g, k]`` is True iff the distance-``k`` graph has no clique on
    ``cap + 1`` vertices; ``cap <= 0`` disables the filter.
    """
    M = batch.shape[0]
    ek = np.zeros((M, n + 1), np.int64)
    ok = np.ones((M, n + 1), np.bool_)
    dist = np.empty((n, n), np.int64)
    rk = np.empty((n + 1, n), np.int64)
    full = (ONE << np.int64(n)) - 1
    for g in range(M):
        rows = batch[g]
        for s in range(n):
            for t in range(n):
                dist[s, t] = -1
            dist[s, s] = 0
            seen = ONE << np.int64(s)
            frontier = seen
            level = 0
            while frontier:
                level += 1
                nxt = np.int64(0)
                for x in range(n):
                    if (frontier >> np.int64(x)) & ONE:
                        nxt |= rows[x]
                frontier = nxt & full & ~seen
                seen |= frontier
                for x in range(n):
                    if (frontier >> np.int64(x)) & ONE:
                        dist[s, x] = level
        for k in range(n + 1):
            for v in range(n):
                rk[k, v] = 0
        for s in range(n):
            for t in range(s + 1, n):
                d = dist[s, t]
                if d > 0:
                    ek[g, d] += 1
                    rk[d, s] |= ONE << np.int64(t)
                    rk[d, t] |= ONE << np.int64(s)
        if cap <= 0:
            continue
        for k in range(1, n + 1):
            if ek[g, k] == 0:
                continue
            if cap == 1:
                ok[g, k] = False
            elif cap == 2:
                r = rk[k]
                for s in range(n):
                    hi = r[s] >> np.int64(s + 1)
                    t = s + 1
                    bad = False
                    while hi:
                        if hi & ONE and (r[s] & r[t]):
                            bad = True
                            break
                        hi >>= ONE
                        t += 1
                    if bad:
                        ok[g, k] = False
                        break
            else:
                ok[g, k] = not _has_clique(rk[k], n, cap + 1)
    return ek, ok


@njit(cache=True)
def bound_profile(batch, n):
    """Inputs of the k-distance bounds for every graph and every ``k``.

    Returns ``ek`` (pairs at distance k), ``tri_free`` (distance-k graph has
    no triangle), ``interior`` (vertices with no k-neighbour) and ``pmin``
    (fewest vertices that are k-neighbours of neither end of a k-distance,
    -1 when there is no k-distance), each shaped ``[M, n + 1]``, plus
    ``pairs`` = number of connected pairs per graph.
    """
    M = batch.shape[0]
    ek = np.zeros((M, n + 1), np.int64)
    tri = np.ones((M, n + 1), np.bool_)
    interior = np.zeros((M, n + 1), np.int64)
    pmin = np.full((M, n + 1), -1, np.int64)
    pairs = np.zeros(M, np.int64)
    dist = np.empty((n, n), np.int64)
    rk = np.empty((n + 1, n), np.int64)
    full = (ONE << np.int64(n)) - 1
    for g in range(M):
        rows = batch[g]
        for s in range(n):
            for t in range(n):
                dist[s, t] = -1
            dist[s, s] = 0
            seen = ONE << np.int64(s)
            frontier = seen
            level = 0
            while frontier:
                level += 1
                nxt = np.int64(0)
                for x in range(n):
                    if (frontier >> np.int64(x)) & ONE:
                        nxt |= rows[x]
                frontier = nxt & full & ~seen
                seen |= frontier
                for x in range(n):
                    if (frontier >> np.int64(x)) & ONE:
                        dist[s, x] = level
        for k in range(n + 1):
            for v in range(n):
                rk[k, v] = 0
        for s in range(n):
            for t in range(s + 1, n):
                d = dist[s, t]
                if d > 0:
                    pairs[g] += 1
                    ek[g, d] += 1
                    rk[d, s] |= ONE << np.int64(t)
                    rk[d, t] |= ONE << np.int64(s)
        for k in range(1, n + 1):
            r = rk[k]
            cnt = 0
            for v in range(n):
                if r[v] == 0:
                    cnt += 1
            interior[g, k] = cnt
            best = -1
            for s in range(n):
                for t in range(s + 1, n):
                    if (r[s] >> np.int64(t)) & ONE:
                        if r[s] & r[t]:
                            tri[g, k] = False
                        q = n - _popcount(r[s] | r[t])
                        if best < 0 or q < best:
                            best = q
            pmin[g, k] = best
    return ek, tri, interior, pmin, pairs
