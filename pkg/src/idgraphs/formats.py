"""graph6 and plain edge-list I/O."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graph import Graph, GraphError

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError("graph6 supports at most 258047 vertices")


def to_graph6(G: Graph, header: bool = False) -> str:
    bits = []
    for j in range(1, G.n):
        row = G.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for p in range(0, len(bits), 6):
        v = 0
        for b in bits[p : p + 6]:
            v = v << 1 | b
        body.append(chr(v + 63))
    return (HEADER if header else "") + _encode_n(G.n) + "".join(body)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    if not s:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError(f"invalid graph6 character in {text!r}")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise GraphError("8-byte graph6 sizes are not supported")
        if len(s) < 4:
            raise GraphError("truncated graph6 size field")
        n = 0
        for c in s[1:4]:
            n = n << 6 | (ord(c) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {(need + 5) // 6} for n={n}")
    vals = [ord(c) - 63 for c in body]
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if vals[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, adj)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def read_graph6_file(path) -> list[Graph]:
    with open(path) as f:
        return list(read_graph6_lines(f))


def to_edge_list(G: Graph) -> str:
    edges = G.edges()
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"edge list declares {m} edges but has {len(edges)}")
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    return from_edge_list(Path(path).read_text())
