"""Canonical labeling by partition refinement and individualization.

The search explores the individualization-refinement tree, keeps the leaf
whose relabeled adjacency matrix is lexicographically largest, and prunes
with automorphisms discovered on the way (orbit pruning under the pointwise
stabilizer of the current prefix, plus a jump back to the divergence level
whenever a leaf reproduces an earlier certificate).

All routines take a dense ``uint8`` adjacency matrix so that any ``n`` the
rest of the package supports (up to 64) works without bit-width concerns.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_GENERATORS = 256


@njit(cache=True)
def _refine(A, n, lab, csize, queue, inq, head, qlen, cnt):
    """Refine the ordered partition in place until it is equitable.

    ``queue`` holds cell starts to be used as splitters.  The result depends
    only on positions, never on vertex names, which keeps the whole search
    isomorphism invariant.
    """
    qcap = n + 1
    while qlen > 0:
        w = queue[head]
        head += 1
        if head == qcap:
            head = 0
        qlen -= 1
        inq[w] = False
        for v in range(n):
            cnt[v] = 0
        for p in range(w, w + csize[w]):
            x = lab[p]
            for v in range(n):
                cnt[v] += A[x, v]
        p = 0
        while p < n:
            s = csize[p]
            if s > 1:
                c0 = cnt[lab[p]]
                split = False
                for q in range(p + 1, p + s):
                    if cnt[lab[q]] != c0:
                        split = True
                        break
                if split:
                    for q in range(p + 1, p + s):
                        x = lab[q]
                        key = cnt[x]
                        r = q - 1
                        while r >= p and cnt[lab[r]] > key:
                            lab[r + 1] = lab[r]
                            r -= 1
                        lab[r + 1] = x
                    was_in = inq[p]
                    big_start = p
                    big_size = 0
                    fs = p
                    for q in range(p + 1, p + s + 1):
                        if q == p + s or cnt[lab[q]] != cnt[lab[fs]]:
                            fz = q - fs
                            csize[fs] = fz
                            if fz > big_size:
                                big_size = fz
                                big_start = fs
                            fs = q
                    fs = p
                    while fs < p + s:
                        if (was_in or fs != big_start) and not inq[fs]:
                            queue[(head + qlen) % qcap] = fs
                            qlen += 1
                            inq[fs] = True
                        fs += csize[fs]
            p += s


@njit(cache=True)
def _compare(A, la, lb, n):
    """Lexicographic comparison of the two relabeled upper triangles."""
    for i in range(n):
        ra = la[i]
        rb = lb[i]
        for j in range(i + 1, n):
            a = A[ra, la[j]]
            b = A[rb, lb[j]]
            if a != b:
                return 1 if a > b else -1
    return 0


@njit(cache=True)
def _find(uf, x):
    while uf[x] != x:
        uf[x] = uf[uf[x]]
        x = uf[x]
    return x


@njit(cache=True)
def _orbits(gens, ngens, n, path, depth, uf):
    """Union-find of orbits under the generators fixing ``path[:depth]``."""
    for v in range(n):
        uf[v] = v
    for g in range(ngens):
        fixes = True
        for i in range(depth):
            if gens[g, path[i]] != path[i]:
                fixes = False
                break
        if not fixes:
            continue
        for v in range(n):
            a = _find(uf, v)
            b = _find(uf, gens[g, v])
            if a != b:
                if a < b:
                    uf[b] = a
                else:
                    uf[a] = b


@njit(cache=True)
def _first_nonsingleton(csize, n):
    """Start and size of the first smallest non-singleton cell, or (-1, 0)."""
    best = -1
    bsize = n + 1
    p = 0
    while p < n:
        s = csize[p]
        if 1 < s < bsize:
            best = p
            bsize = s
        p += s
    if best < 0:
        return -1, 0
    return best, bsize


@njit(cache=True)
def canonical_labeling(A):
    """Return ``(lab, orbit)`` for the graph with adjacency matrix ``A``.

    ``lab[i]`` is the vertex placed at canonical position ``i``.  ``orbit[v]``
    is the least vertex of ``v``'s orbit under the automorphisms found during
    the search (these generate a subgroup of the automorphism group, so equal
    entries always mean the vertices are similar).
    """
    n = A.shape[0]
    LAB = np.empty((n + 1, n), np.int64)
    CSZ = np.zeros((n + 1, n), np.int64)
    TC = np.zeros(n + 1, np.int64)
    TS = np.zeros(n + 1, np.int64)
    CELLV = np.zeros((n + 1, n), np.int64)
    IDX = np.zeros(n + 1, np.int64)
    PATH = np.zeros(n + 1, np.int64)
    queue = np.zeros(n + 1, np.int64)
    inq = np.zeros(n, np.bool_)
    cnt = np.zeros(n, np.int64)
    uf = np.empty(n, np.int64)
    gens = np.empty((MAX_GENERATORS, n), np.int64)
    ngens = 0

    first = np.empty(n, np.int64)
    best = np.empty(n, np.int64)
    firstpath = np.zeros(n + 1, np.int64)
    bestpath = np.zeros(n + 1, np.int64)
    firstlen = 0
    bestlen = 0
    have_leaf = False

    for v in range(n):
        LAB[0, v] = v
    if n == 0:
        return LAB[0].copy(), LAB[0].copy()
    CSZ[0, 0] = n
    queue[0] = 0
    inq[0] = True
    _refine(A, n, LAB[0], CSZ[0], queue, inq, 0, 1, cnt)
    t, s = _first_nonsingleton(CSZ[0], n)
    if t < 0:
        for v in range(n):
            uf[v] = v
        return LAB[0].copy(), uf
    TC[0] = t
    TS[0] = s
    for q in range(s):
        CELLV[0, q] = LAB[0, t + q]
    IDX[0] = 0
    level = 0

    while level >= 0:
        if IDX[level] >= TS[level]:
            level -= 1
            continue
        u = CELLV[level, IDX[level]]
        IDX[level] += 1
        if ngens > 0 and IDX[level] > 1:
            _orbits(gens, ngens, n, PATH, level, uf)
            ru = _find(uf, u)
            skip = False
            for j in range(IDX[level] - 1):
                if _find(uf, CELLV[level, j]) == ru:
                    skip = True
                    break
            if skip:
                continue
        PATH[level] = u
        child = level + 1
        for q in range(n):
            LAB[child, q] = LAB[level, q]
            CSZ[child, q] = CSZ[level, q]
        t = TC[level]
        s = TS[level]
        for q in range(t, t + s):
            if LAB[child, q] == u:
                LAB[child, q] = LAB[child, t]
                LAB[child, t] = u
                break
        CSZ[child, t] = 1
        CSZ[child, t + 1] = s - 1
        queue[0] = t
        inq[t] = True
        _refine(A, n, LAB[child], CSZ[child], queue, inq, 0, 1, cnt)
        nt, ns = _first_nonsingleton(CSZ[child], n)
        if nt >= 0:
            TC[child] = nt
            TS[child] = ns
            for q in range(ns):
                CELLV[child, q] = LAB[child, nt + q]
            IDX[child] = 0
            level = child
            continue

        leaf = LAB[child]
        plen = child
        if not have_leaf:
            have_leaf = True
            for q in range(n):
                first[q] = leaf[q]
                best[q] = leaf[q]
            for q in range(plen):
                firstpath[q] = PATH[q]
                bestpath[q] = PATH[q]
            firstlen = plen
            bestlen = plen
            continue
        other = -1
        if _compare(A, leaf, first, n) == 0:
            other = 0
        else:
            c = _compare(A, leaf, best, n)
            if c == 0:
                other = 1
            elif c > 0:
                for q in range(n):
                    best[q] = leaf[q]
                for q in range(plen):
                    bestpath[q] = PATH[q]
                bestlen = plen
        if other < 0:
            continue
        ref = first if other == 0 else best
        refpath = firstpath if other == 0 else bestpath
        reflen = firstlen if other == 0 else bestlen
        if ngens < MAX_GENERATORS:
            for q in range(n):
                gens[ngens, ref[q]] = leaf[q]
            ngens += 1
        d = 0
        lim = plen if plen < reflen else reflen
        while d < lim and PATH[d] == refpath[d]:
            d += 1
        level = d

    _orbits(gens, ngens, n, PATH, 0, uf)
    for v in range(n):
        uf[v] = _find(uf, v)
    return best, uf


@njit(cache=True)
def relabeled_rows(A, lab):
    """Bitset rows of the graph after moving vertex ``lab[i]`` to ``i``."""
    n = A.shape[0]
    rows = np.zeros(n, np.int64)
    for i in range(n):
        r = 0
        ai = lab[i]
        for j in range(n):
            if A[ai, lab[j]]:
                r |= np.int64(1) << np.int64(j)
        rows[i] = r
    return rows


@njit(cache=True)
def rows_to_matrix(rows, n):
    A = np.zeros((n, n), np.uint8)
    for i in range(n):
        r = rows[i]
        for j in range(n):
            if (r >> np.int64(j)) & np.int64(1):
                A[i, j] = 1
    return A
