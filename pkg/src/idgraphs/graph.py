"""Immutable simple undirected graphs on at most MAX_N vertices (128 by default).

Adjacency is stored as one int bitmask per vertex (the open neighbourhood).
All vertex sets exchanged with this module are int bitmasks too; see
:mod:`idgraphs.bitset` for helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .bitset import MAX_N, full_mask, members, popcount, to_words

INF = math.inf  # d(x, y) for vertices in different components


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph with vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "__dict__")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 1 <= n <= MAX_N:
            raise GraphError(f"vertex count must be in 1..{MAX_N}, got {n}")
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        adj = tuple(int(r) for r in adj)
        universe = full_mask(n)
        for x, row in enumerate(adj):
            if row & ~universe or row < 0:
                raise GraphError(f"row {x} has bits outside 0..{n - 1}")
            if row >> x & 1:
                raise GraphError(f"loop at vertex {x}")
            for y in members(row):
                if not adj[y] >> x & 1:
                    raise GraphError(f"edge {x}-{y} is not symmetric")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)

    def __setattr__(self, name, value):
        if name in ("n", "adj"):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix).astype(bool)
        n = a.shape[0]
        adj = [sum(1 << j for j in np.flatnonzero(a[i])) for i in range(n)]
        return cls(n, adj)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    @cached_property
    def closed(self) -> tuple[int, ...]:
        return tuple(row | (1 << x) for x, row in enumerate(self.adj))

    @cached_property
    def closed_words(self) -> np.ndarray:
        arr = to_words(self.closed)
        arr.setflags(write=False)
        return arr

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(popcount(r) for r in self.adj)

    @cached_property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in members(self.adj[x]) if x < y]

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.adj[x] >> y & 1)

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for x, y in self.edges():
            a[x, y] = a[y, x] = 1
        return a

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        pos = {v: i for i, v in enumerate(order)}
        adj = [0] * self.n
        for i, v in enumerate(order):
            row = 0
            for w in members(self.adj[v]):
                row |= 1 << pos[w]
            adj[i] = row
        return Graph(self.n, adj)

    def complement(self) -> "Graph":
        universe = full_mask(self.n)
        return Graph(self.n, [universe & ~(r | 1 << x) for x, r in enumerate(self.adj)])


def _check_vertex(G: Graph, x: int) -> None:
    if not 0 <= x < G.n:
        raise GraphError(f"vertex {x} out of range for n={G.n}")


def neighborhood(G: Graph, x: int) -> int:
    _check_vertex(G, x)
    return G.adj[x]


def closed_neighborhood(G: Graph, x: int) -> int:
    """N[x] as a bitmask."""
    _check_vertex(G, x)
    return G.closed[x]


def neighborhood_of_set(G: Graph, X: int) -> int:
    """N[X], the union of closed neighbourhoods; N[empty] is empty."""
    out = 0
    for x in members(X):
        out |= G.closed[x]
    return out


def _spheres(G: Graph, x: int, r: float):
    seen = 1 << x
    frontier = seen
    yield frontier
    d = 0
    while frontier and d < r:
        nxt = 0
        for v in members(frontier):
            nxt |= G.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        d += 1
        if frontier:
            yield frontier


def ball(G: Graph, x: int, r: int) -> int:
    """N_r[x] = {y : d(x, y) <= r}."""
    _check_vertex(G, x)
    if r < 0:
        raise GraphError("radius must be non-negative")
    out = 0
    for s in _spheres(G, x, r):
        out |= s
    return out


def sphere(G: Graph, x: int, r: int) -> int:
    """S_r(x) = {y : d(x, y) = r}."""
    _check_vertex(G, x)
    if r < 0:
        raise GraphError("radius must be non-negative")
    for d, s in enumerate(_spheres(G, x, r)):
        if d == r:
            return s
    return 0


def distances_from(G: Graph, x: int) -> list[float]:
    _check_vertex(G, x)
    dist = [INF] * G.n
    for d, s in enumerate(_spheres(G, x, INF)):
        for v in members(s):
            dist[v] = d
    return dist


def distance_matrix(G: Graph) -> list[list[float]]:
    return [distances_from(G, x) for x in range(G.n)]


def induced_subgraph(G: Graph, A: int) -> Graph:
    """G[A] with the vertices of A relabelled ascending to 0..|A|-1."""
    verts = members(A)
    if not verts:
        raise GraphError("induced subgraph needs a non-empty vertex set")
    if verts[-1] >= G.n:
        raise GraphError("vertex set has bits outside the graph")
    pos = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for w in members(G.adj[v] & A):
            row |= 1 << pos[w]
        adj.append(row)
    return Graph(len(verts), adj)


def delete_vertex(G: Graph, v: int) -> Graph:
    return induced_subgraph(G, full_mask(G.n) & ~(1 << v))


def components(G: Graph) -> list[list[int]]:
    left = full_mask(G.n)
    out = []
    while left:
        x = (left & -left).bit_length() - 1
        comp = ball(G, x, G.n)
        out.append(members(comp))
        left &= ~comp
    return out


def has_triangle(G: Graph) -> bool:
    for x, y in G.edges():
        if G.adj[x] & G.adj[y]:
            return True
    return False


def find_triangle(G: Graph) -> tuple[int, int, int] | None:
    for x, y in G.edges():
        common = G.adj[x] & G.adj[y]
        if common:
            return (x, y, members(common)[0])
    return None


@dataclass(frozen=True)
class GraphStats:
    min_degree: int
    max_degree: int
    diameter: float
    components: list[list[int]]
    has_triangle: bool


def diameter(G: Graph) -> float:
    if len(components(G)) > 1:
        return INF
    return max(max(distances_from(G, x)) for x in range(G.n))


def basic_stats(G: Graph) -> GraphStats:
    return GraphStats(
        min_degree=min(G.degrees),
        max_degree=max(G.degrees),
        diameter=diameter(G),
        components=components(G),
        has_triangle=has_triangle(G),
    )


def power_graph(G: Graph, r: int) -> Graph:
    """Join every pair at distance 1..r."""
    if r < 1:
        raise GraphError("power graph radius must be >= 1")
    return Graph(G.n, [ball(G, x, r) & ~(1 << x) for x in range(G.n)])


def disjoint_union(*graphs: Graph) -> Graph:
    adj = []
    offset = 0
    for H in graphs:
        adj.extend(row << offset for row in H.adj)
        offset += H.n
    return Graph(offset, adj)
