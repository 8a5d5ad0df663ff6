"""graph6 encoding (the nauty/geng interchange format).

Header: one byte ``chr(n + 63)`` for ``n <= 62``; ``~`` plus three bytes for
``63 <= n <= 258047``. Body: the upper-triangle adjacency bits in
column-major order ``(0,1), (0,2), (1,2), (0,3), ...``, packed six to a byte
(most significant first), zero padded, each byte offset by 63.
"""
from __future__ import annotations

from .graph import Graph

MAX_SHORT_ORDER = 62
MAX_ORDER = 258047


class Graph6Error(ValueError):
    """Malformed graph6 record; ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def _header(n: int) -> str:
    if n <= MAX_SHORT_ORDER:
        return chr(n + 63)
    if n <= MAX_ORDER:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError(f"graph6 cannot encode order {n} (max {MAX_ORDER})")


def to_graph6(g: Graph) -> str:
    n = g.order
    head = _header(n)
    adj = g.masks
    out = []
    acc = 0
    nbits = 0
    for v in range(1, n):
        row = adj[v]
        for u in range(v):
            acc = (acc << 1) | (row >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return head + "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if not text:
        raise Graph6Error("empty graph6 record", 0)
    for i, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside [63, 126]", i)

    if text[0] != "~":
        n = ord(text[0]) - 63
        pos = 1
    else:
        if len(text) > 1 and text[1] == "~":
            raise Graph6Error("8-byte headers (n > 258047) are not supported", 1)
        if len(text) < 4:
            raise Graph6Error("truncated extended header", len(text))
        n = 0
        for ch in text[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        if n <= MAX_SHORT_ORDER:
            raise Graph6Error(f"extended header used for small order {n}", 1)
        pos = 4
    if n < 1:
        raise Graph6Error("order 0 graphs are not supported", 0)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(text) - pos
    if have != need:
        raise Graph6Error(f"expected {need} body bytes for n={n}, found {have}",
                          pos + min(have, need))

    adj = [0] * n
    k = 0
    u, v = 0, 1
    for i in range(need):
        byte = ord(text[pos + i]) - 63
        for shift in range(5, -1, -1):
            bit = byte >> shift & 1
            if k < nbits:
                if bit:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                u += 1
                if u == v:
                    u = 0
                    v += 1
            elif bit:
                raise Graph6Error("nonzero padding bits", pos + i)
            k += 1
    return Graph.from_masks(adj)
