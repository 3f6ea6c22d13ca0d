"""Canonical labelling by individualisation-refinement with orbit pruning.

The certificate is the graph6 string of the canonically relabelled graph,
so equal forms mean isomorphic graphs and the form decodes back to a
representative.
"""

from __future__ import annotations

from .bitset import mask_of
from .graph import Graph


def _refine(adj, cells):
    """Split cells by neighbour counts into every current cell until stable."""
    while True:
        masks = [mask_of(c) for c in cells]
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(c)
                continue
            split = True
            for key in keys:
                out.append([v for v in c if sig[v] == key])
        if not split:
            return out
        cells = out


def _certificate(adj, order):
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        r = 0
        a = adj[v]
        while a:
            low = a & -a
            r |= 1 << pos[low.bit_length() - 1]
            a ^= low
        rows.append(r)
    return tuple(rows)


class _Search:
    def __init__(self, adj):
        self.adj = adj
        self.best_key = None
        self.best_order = None
        self.first_order = None
        self.first_key = None
        self.generators: list[dict[int, int]] = []

    def leaf(self, order):
        key = _certificate(self.adj, order)
        if self.first_key is None:
            self.first_key, self.first_order = key, order
            self.best_key, self.best_order = key, order
            return
        for ref_key, ref_order in ((self.first_key, self.first_order), (self.best_key, self.best_order)):
            if key == ref_key:
                self.generators.append(dict(zip(order, ref_order)))
                return
        if key > self.best_key:
            self.best_key, self.best_order = key, order

    def orbits_fixing(self, prefix, cell):
        parent = {v: v for v in cell}

        def find(v):
            while parent.get(v, v) != v:
                v = parent[v]
            return v

        fixed = set(prefix)
        for g in self.generators:
            if any(g[p] != p for p in fixed):
                continue
            for v in cell:
                w = g[v]
                if w in parent:
                    rv, rw = find(v), find(w)
                    if rv != rw:
                        parent[max(rv, rw)] = min(rv, rw)
        return find

    def run(self, cells, prefix):
        cells = _refine(self.adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self.leaf([c[0] for c in cells])
            return
        cell = cells[target]
        tried = []
        for v in sorted(cell):
            if tried:
                find = self.orbits_fixing(prefix, cell)
                if any(find(v) == find(t) for t in tried):
                    continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            self.run(cells[:target] + [[v], rest] + cells[target + 1 :], prefix + [v])


def canonical_order(G: Graph) -> list[int]:
    """Vertex order whose relabelling is the canonical representative."""
    s = _Search(G.adj)
    s.run([list(range(G.n))], [])
    return s.best_order


def canonical_graph(G: Graph) -> Graph:
    return G.relabel(canonical_order(G))


def canonical_form(G: Graph) -> bytes:
    from .formats import to_graph6

    return to_graph6(canonical_graph(G)).encode("ascii")


def automorphism_generators(G: Graph) -> list[dict[int, int]]:
    s = _Search(G.adj)
    s.run([list(range(G.n))], [])
    return s.generators


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.num_edges != H.num_edges or sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_form(G) == canonical_form(H)
