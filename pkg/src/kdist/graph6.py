"""graph6 encoding and decoding.

Only the bit layout lives here; :class:`kdist.graph.Graph` wraps it.  Rows are
integer bitsets (bit ``j`` of ``rows[i]`` set iff ``ij`` is an edge).

Layout: a size prefix (one byte ``n + 63`` for ``n <= 62``, otherwise ``~``
followed by three 6-bit bytes), then the upper triangle in column-major order
``(0,1), (0,2), (1,2), (0,3), ...`` packed six bits per byte, big-endian,
zero-padded, each byte offset by 63.
"""

from __future__ import annotations

HEADER = b">>graph6<<"
MAX_N = 258047


class Graph6Error(ValueError):
    """Malformed graph6 data."""


def _encode_size(n: int) -> bytes:
    if n < 0 or n > MAX_N:
        raise Graph6Error(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])


def encode(n: int, rows) -> bytes:
    """Encode an adjacency given as bitset rows; no header, no newline."""
    out = bytearray(_encode_size(n))
    acc = 0
    nbits = 0
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode(data: bytes | str) -> tuple[int, list[int]]:
    """Decode one graph6 record into ``(n, rows)``.

    A leading ``>>graph6<<`` header and trailing whitespace are tolerated.
    """
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise Graph6Error("empty graph6 record")
    for b in data:
        if b < 63 or b > 126:
            raise Graph6Error(f"byte {b!r} outside the graph6 range 63..126")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise Graph6Error("unsupported graph6 size prefix")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}"
        )
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for b in body:
        v = b - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if (v >> shift) & 1:
                    raise Graph6Error("nonzero padding bits")
                continue
            if (v >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return n, rows
