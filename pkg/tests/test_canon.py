import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idgraphs import constructions as cons
from idgraphs.canon import automorphism_generators, canonical_form, canonical_graph, canonical_order, is_isomorphic
from idgraphs.formats import from_graph6

from conftest import graphs
from oracles import atlas, canonical_by_permutation, random_graph, to_nx


def _shuffle(G, rng):
    return G.relabel(list(rng.permutation(G.n)))


@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_form_invariant_under_relabelling(G, r):
    order = list(range(G.n))
    r.shuffle(order)
    assert canonical_form(G.relabel(order)) == canonical_form(G)


@given(graphs(max_n=9))
def test_form_decodes_to_isomorphic_graph(G):
    H = from_graph6(canonical_form(G).decode())
    assert H == canonical_graph(G)
    assert nx.is_isomorphic(to_nx(G), to_nx(H))
    assert sorted(canonical_order(G)) == list(range(G.n))


@pytest.mark.parametrize("n", range(1, 7))
def test_atlas_classes_get_distinct_forms(n):
    forms = {canonical_form(G) for G in atlas(n)}
    assert len(forms) == len(atlas(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_agrees_with_permutation_canonisation(n):
    # isomorphism classes under both maps coincide
    ours, brute = {}, {}
    for i, G in enumerate(atlas(n)):
        ours.setdefault(canonical_form(G), set()).add(i)
        brute.setdefault(canonical_by_permutation(G), set()).add(i)
    assert sorted(map(sorted, ours.values())) == sorted(map(sorted, brute.values()))


def test_random_pairs_against_vf2():
    rng = np.random.default_rng(11)
    disagreements = 0
    pairs = 0
    for _ in range(5000):
        n = int(rng.integers(1, 9))
        p = float(rng.uniform(0.2, 0.8))
        G = random_graph(n, p, rng)
        # one relabelled copy (isomorphic) and one independent draw (usually not)
        for H in (_shuffle(G, rng), random_graph(n, p, rng)):
            pairs += 1
            disagreements += is_isomorphic(G, H) != nx.is_isomorphic(to_nx(G), to_nx(H))
    assert pairs >= 10_000
    assert disagreements == 0


@pytest.mark.parametrize(
    "G, order",
    [(cons.cycle(6), 12), (cons.complete(5), 120), (cons.hypercube(3), 48), (cons.path(5), 2), (cons.paley(9), 72)],
)
def test_generators_span_automorphism_group(G, order):
    gens = automorphism_generators(G)
    for g in gens:
        assert all(G.has_edge(g[u], g[v]) for u, v in G.edges())
    # close the generated group under composition
    ident = tuple(range(G.n))
    group = {ident}
    frontier = [ident]
    perms = [tuple(g[i] for i in range(G.n)) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in perms:
                c = tuple(g[a[i]] for i in range(G.n))
                if c not in group:
                    group.add(c)
                    nxt.append(c)
        frontier = nxt
    assert len(group) == order


def test_large_strongly_regular_graph():
    G = cons.rshcd_plus_graph(3)
    rng = np.random.default_rng(3)
    assert canonical_form(_shuffle(G, rng)) == canonical_form(G)
    H = G.complement()
    assert not is_isomorphic(G, H)
