"""graph6 codec and the ``n m`` / ``u v`` adjacency-list text format."""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import Graph6Error
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(G: Graph) -> str:
    out = [_encode_n(G.n)]
    acc = nbits = 0
    for j in range(1, G.n):
        for i in range(j):
            acc = acc << 1 | (G.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (optional ``>>graph6<<`` header, trailing newline allowed)."""
    s = text.rstrip("\r\n")
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    data = s.encode("latin-1", errors="replace")
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside 63..126", base + i)

    if data[0] < 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size header", base + len(data))
        n, pos = 0, 8
        for b in data[2:8]:
            n = n << 6 | (b - 63)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte size header", base + len(data))
        n, pos = 0, 4
        for b in data[1:4]:
            n = n << 6 | (b - 63)
        if n < 63:
            raise Graph6Error("non-canonical size header", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} adjacency bytes, got {len(body)}", base + len(data))
    if len(body) > need:
        raise Graph6Error("trailing garbage after adjacency data", base + pos + need)

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            b = body[k // 6] - 63
            if b >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    pad = need * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits", base + pos + need - 1)
    return Graph(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for raw in lines:
        line = raw.strip()
        if line:
            yield parse_graph6(line)


def to_adjacency_text(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def parse_adjacency_text(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("adjacency text must start with an 'n m' header")
    n, m = (int(x) for x in rows[0])
    edges = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        u, v = int(row[0]), int(row[1])
        edges.append((u, v))
    if len(edges) != m or len({(min(e), max(e)) for e in edges}) != m:
        raise ValueError(f"header promises {m} distinct edges, found {len(edges)}")
    return Graph.from_edges(n, edges)
