"""Graph families, strongly regular graph constructions and vertex-extension constructions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .bitset import MAX_N, full_mask, members
from .fields import Field
from .graph import Graph, GraphError, disjoint_union


def _size(n: int) -> int:
    if n < 1:
        raise GraphError("sizes must be >= 1")
    if n > MAX_N:
        raise GraphError(f"graph would have {n} > {MAX_N} vertices")
    return n


def empty(n: int) -> Graph:
    return Graph(_size(n), [0] * n)


def path(n: int) -> Graph:
    return Graph.from_edges(_size(n), [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(_size(n), [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """S_n = K_{1,n-1}: centre 0 joined to 1..n-1."""
    return Graph.from_edges(_size(n), [(0, i) for i in range(1, n)])


def complete(n: int) -> Graph:
    _size(n)
    return Graph(n, [full_mask(n) & ~(1 << x) for x in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both parts need at least one vertex")
    n = _size(a + b)
    return Graph.from_edges(n, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(m: int) -> Graph:
    """Q_m on 0..2^m-1, u ~ v iff their bit patterns differ in one position."""
    if m < 1:
        raise GraphError("hypercube dimension must be >= 1")
    n = _size(1 << m)
    return Graph(n, [sum(1 << (u ^ (1 << b)) for b in range(m)) for u in range(n)])


FAMILIES = {
    "empty": empty,
    "path": path,
    "cycle": cycle,
    "star": star,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "bipartite": complete_bipartite,
    "hypercube": hypercube,
}


def make_family(name: str, *params: int) -> Graph:
    try:
        fn = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}") from None
    return fn(*params)


def add_universal_vertex(G0: Graph) -> Graph:
    """G0 plus a new last vertex adjacent to every old vertex."""
    n = _size(G0.n + 1)
    top = 1 << G0.n
    return Graph(n, [row | top for row in G0.adj] + [full_mask(G0.n)])


def universal_vertex_keeps_membership(G0: Graph, k0: int) -> bool:
    """Whether adding a universal vertex is guaranteed to map Gr(n0,k0) into Gr(n0+1,k0+1)."""
    return max(G0.degrees) <= k0 - 2


def cube_with_centre() -> Graph:
    return add_universal_vertex(hypercube(3))


def paley(q: int) -> Graph:
    """Paley graph on GF(q): i ~ j iff i - j is a nonzero square."""
    try:
        F = Field.of_order(q)
    except ValueError as exc:
        raise GraphError(str(exc)) from None
    if q % 4 != 1:
        raise GraphError(f"Paley graphs need q = 1 mod 4, got {q}")
    n = _size(q)
    elems = F.elements()
    square = [F.is_square(e) for e in elems]
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if square[F.index(F.sub(elems[i], elems[j]))]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, adj)


def rshcd_plus_graph(r: int) -> Graph:
    """SRG from the r-th tensor power of the 4x4 RSHCD+ matrix.

    Vertices are {1,2,3,4}^r in lexicographic order; distinct vertices are
    adjacent iff an even number of coordinates sum to 5.
    """
    if r < 1 or 4**r > MAX_N:
        raise GraphError(f"rshcd order r must satisfy 1 <= r and 4^r <= {MAX_N}")
    verts = list(product(range(1, 5), repeat=r))
    n = len(verts)
    adj = [0] * n
    for a, b in combinations(range(n), 2):
        hits = sum(1 for i, j in zip(verts[a], verts[b]) if i + j == 5)
        if hits % 2 == 0:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return Graph(n, adj)


def kneser(n: int, r: int) -> Graph:
    """r-subsets of an n-set, adjacent when disjoint. K(7,2) is a (21,10,3,6)-SRG."""
    verts = [frozenset(c) for c in combinations(range(n), r)]
    size = _size(len(verts))
    return Graph.from_edges(size, [(a, b) for a, b in combinations(range(size), 2) if not verts[a] & verts[b]])


def latin_square_graph(m: int) -> Graph:
    """Cells of the cyclic m x m Latin square, adjacent when sharing row, column or symbol."""
    n = _size(m * m)
    cells = [(i, j, (i + j) % m) for i in range(m) for j in range(m)]
    edges = [
        (a, b)
        for a, b in combinations(range(n), 2)
        if any(x == y for x, y in zip(cells[a], cells[b]))
    ]
    return Graph.from_edges(n, edges)


def latin_square_complement(m: int) -> Graph:
    """Complement of the Latin square graph; m = 6 gives a (36,20,10,12)-SRG."""
    return latin_square_graph(m).complement()


# --- strongly regular graphs ----------------------------------------------------


@dataclass(frozen=True)
class SrgParams:
    n: int
    t: int
    lam: int
    mu: int

    def consistent(self) -> bool:
        """n = t + 1 + t(t-1-lam)/mu, checked in integers."""
        if self.mu <= 0:
            return False
        return (self.n - self.t - 1) * self.mu == self.t * (self.t - 1 - self.lam)

    def is_valid(self) -> bool:
        return 0 <= self.lam <= self.t - 1 and 1 <= self.mu <= self.t and self.consistent()


def paley_params(q: int) -> SrgParams:
    return SrgParams(q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)


def rshcd_params(r: int) -> SrgParams:
    return SrgParams(2 ** (2 * r), 2 ** (2 * r - 1) + 2 ** (r - 1) - 1, 2 ** (2 * r - 2) + 2 ** (r - 1) - 2, 2 ** (2 * r - 2) + 2 ** (r - 1))


@dataclass(frozen=True)
class SrgCheck:
    params: SrgParams | None
    reason: str | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.params is not None


def srg_check(G: Graph) -> SrgCheck:
    degs = G.degrees
    t = degs[0]
    for x, d in enumerate(degs):
        if d != t:
            return SrgCheck(None, "not regular", (0, x))
    lam = mu = None
    mu_pair = None
    for x, y in combinations(range(G.n), 2):
        common = (G.adj[x] & G.adj[y]).bit_count()
        if G.adj[x] >> y & 1:
            if lam is None:
                lam = common
            elif common != lam:
                return SrgCheck(None, "adjacent pairs disagree on common neighbours", (x, y))
        else:
            if mu is None:
                mu, mu_pair = common, (x, y)
            elif common != mu:
                return SrgCheck(None, "non-adjacent pairs disagree on common neighbours", (x, y))
    if lam is None:
        return SrgCheck(None, "no adjacent pairs")
    if mu is None:
        return SrgCheck(None, "no non-adjacent pairs")
    p = SrgParams(G.n, t, lam, mu)
    if not p.is_valid():
        return SrgCheck(None, "parameters outside the SRG range", mu_pair)
    return SrgCheck(p)


def srg_min_k(p: SrgParams) -> int:
    """Smallest k putting an SRG with these parameters in Gr(n, k)."""
    return max(p.n - p.t, p.n - 2 * p.t + 2 * p.lam + 3, p.n - 2 * p.t + 2 * p.mu - 1)


def srg_extend_k0(p: SrgParams) -> int:
    """Base k0 of the vertex-duplication extension (includes the t term)."""
    n, t, lam, mu = p.n, p.t, p.lam, p.mu
    return max(n - t, t, n - 2 * t + 2 * lam + 3, n - 2 * t + 2 * mu - 1, 2 * t - 2 * lam - 1, 2 * t - 2 * mu + 2)


def srg_extend_claim(p: SrgParams, i: int) -> tuple[int, int] | None:
    """(n0 + i, k0 + i) guaranteed for srg_extend(., p, i), or None when k0 > n0."""
    k0 = srg_extend_k0(p)
    if k0 > p.n:
        return None
    return p.n + i, k0 + i


def srg_extend(G0: Graph, p: SrgParams, i: int) -> Graph:
    """Add i new vertices x'_j joined to every y outside N(x_j), x_j = vertex j-1.

    For i = n0 + 1 the n0-vertex extension gets a universal vertex on top.
    """
    chk = srg_check(G0)
    if chk.params != p:
        raise GraphError(f"base graph is not a {p} SRG ({chk.reason or chk.params})")
    n0 = G0.n
    if not 0 <= i <= n0 + 1:
        raise GraphError(f"i must be in 0..{n0 + 1}")
    if i == 0:
        return G0
    if i == n0 + 1:
        return add_universal_vertex(srg_extend(G0, p, n0))
    _size(n0 + i)
    adj = list(G0.adj)
    universe = full_mask(n0)
    for j in range(i):
        new = n0 + j
        outside = universe & ~G0.adj[j]
        row = outside
        for y in members(outside):
            adj[y] |= 1 << new
        adj.append(row)
    return Graph(n0 + i, adj)


def p3_plus_k1() -> Graph:
    return disjoint_union(path(3), empty(1))
