from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idgraphs import constructions as cons
from idgraphs.bitset import full_mask, mask_of
from idgraphs.graph import components, delete_vertex, disjoint_union, induced_subgraph
from idgraphs.identify import (
    BudgetExceeded,
    QueryError,
    brute_force_membership,
    corollary_membership,
    find_unidentified_pair,
    gr_membership,
    i_set,
    id_set_existence_threshold,
    identification_bound,
    is_identifying,
    min_identifying_set,
    min_k,
    min_symdiff,
    random_subset_id_probability,
    small_subsets,
)

from conftest import graphs
import oracles


def test_i_set_and_pair_on_path():
    P = cons.path(3)
    assert i_set(P, 0b111, 0b001) == 0b011
    assert find_unidentified_pair(P, 0b010) == (0b001, 0b010)
    assert find_unidentified_pair(P, 0b100) == (0, 0b001)  # vertex 0 has an empty trace
    assert is_identifying(P, 0b111)
    assert not is_identifying(P, 0b011)


def test_small_subsets_order():
    assert small_subsets(3, 2) == [0, 1, 2, 4, 3, 5, 6]
    assert small_subsets(2, 5) == [0, 1, 2, 3]


@given(graphs(max_n=7), st.integers(1, 2), st.data())
def test_membership_matches_oracle(G, ell, data):
    k = data.draw(st.integers(1, G.n))
    want = oracles.member(G, k, ell)
    assert gr_membership(G, k, ell).member == want
    assert brute_force_membership(G, k, ell) == want
    if ell == 1:
        assert gr_membership(G, k, method="corollary").member == want
        assert corollary_membership(G, k) == want


@given(graphs(max_n=8), st.integers(1, 3))
def test_min_k_matches_oracle(G, ell):
    assert min_k(G, ell) == oracles.min_k(G, ell)


@given(graphs(max_n=8), st.integers(1, 2))
def test_witness_pair_attains_minimum(G, ell):
    v = gr_membership(G, G.n, ell)
    X, Y = v.witness
    assert X != Y
    assert max(bin(X).count("1"), bin(Y).count("1")) <= ell
    from idgraphs.graph import neighborhood_of_set

    assert (neighborhood_of_set(G, X) ^ neighborhood_of_set(G, Y)).bit_count() == v.min_symdiff
    if not v.member:
        # the complement of N[X] ^ N[Y] is a k-set (or superset) that fails
        C = full_mask(G.n) & ~(neighborhood_of_set(G, X) ^ neighborhood_of_set(G, Y))
        assert not is_identifying(G, C, ell)


@given(graphs(max_n=8), st.data())
def test_monotone_in_k(G, data):
    k = data.draw(st.integers(1, G.n))
    if gr_membership(G, k).member and k < G.n:
        assert gr_membership(G, k + 1).member


@given(graphs(min_n=2, max_n=8), st.integers(1, 2), st.data())
def test_hereditary_under_vertex_deletion(G, ell, data):
    k = data.draw(st.integers(1, G.n - 1))
    v = data.draw(st.integers(0, G.n - 1))
    if gr_membership(G, k, ell).member:
        assert gr_membership(delete_vertex(G, v), k, ell).member


@given(graphs(max_n=8), st.integers(1, 2))
def test_ell_monotone(G, ell):
    # identifying larger sets is harder
    a, b = min_k(G, ell), min_k(G, ell + 1)
    if b is not None:
        assert a is not None and a <= b


@given(graphs(max_n=5), graphs(max_n=4))
def test_components_inherit_membership(G, H):
    U = disjoint_union(G, H)
    k = min_k(U)
    if k is not None:
        for comp in components(U):
            C = induced_subgraph(U, mask_of(comp))
            if C.n >= k:
                assert gr_membership(C, k).member


def test_min_degree_is_necessary():
    # a member of Gr(n, k) needs minimum degree >= n - k
    rng = np.random.default_rng(2)
    for _ in range(300):
        G = oracles.random_graph(int(rng.integers(2, 10)), 0.6, rng)
        k = min_k(G)
        if k is not None:
            assert min(G.degrees) >= G.n - k


def test_k_out_of_range():
    with pytest.raises(QueryError):
        gr_membership(cons.path(3), 0)
    with pytest.raises(QueryError):
        gr_membership(cons.path(3), 4)
    with pytest.raises(QueryError):
        gr_membership(cons.path(3), 2, method="nope")
    with pytest.raises(QueryError):
        gr_membership(cons.path(3), 2, ell=2, method="corollary")
    with pytest.raises(QueryError):
        min_symdiff(cons.path(3), 0)


def test_brute_force_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_membership(cons.paley(29), 14, budget=1000)


def test_twins_have_no_min_k():
    assert min_k(cons.complete(4)) is None
    assert min_k(cons.empty(1)) == 1
    assert min_k(cons.empty(4)) == 4


@given(graphs(max_n=8))
def test_min_identifying_set_matches_oracle(G):
    res = min_identifying_set(G)
    want = oracles.min_identifying_size(G)
    if want is None:
        assert res is None
    else:
        assert res.size == want
        assert is_identifying(G, res.witness)
        assert len(res.vertices) == res.size


def test_min_identifying_set_ell2():
    G = cons.cycle(7)
    res = min_identifying_set(G, 2)
    assert res.size == oracles.min_identifying_size(G, 2)
    assert is_identifying(G, res.witness, 2)


MIN_ID_P13 = 4
MIN_ID_P13_WITNESS = 523  # {0, 1, 3, 9}


def test_min_identifying_set_paley13_regression():
    res = min_identifying_set(cons.paley(13))
    assert (res.size, res.witness) == (MIN_ID_P13, MIN_ID_P13_WITNESS)
    assert oracles.min_identifying_size(cons.paley(13)) == MIN_ID_P13


@pytest.mark.parametrize("n, k, s", [(29, 16, 10), (29, 16, 20), (13, 8, 5), (9, 6, 3)])
def test_bound_closed_form(n, k, s):
    assert identification_bound(n, k, s) == 1 - Fraction(comb(n + 1, 2) * comb(k - 1, s), comb(n, s))


@pytest.mark.parametrize("q", [9, 13])
def test_exact_probability_matches_oracle_and_bound(q):
    G = cons.paley(q)
    k = min_k(G)
    for s in range(1, q + 1):
        est = random_subset_id_probability(G, s, mode="exact")
        want = oracles.identifying_fraction(G, s)
        assert est.successes == want.numerator * comb(q, s) // want.denominator
        assert Fraction(est.successes, est.trials) == want
        assert est.empirical >= float(est.bound) - 1e-12
        assert est.k == k
        if s >= k:
            assert est.empirical == 1.0


def test_bound_monotone_in_s_and_clamped():
    G = cons.paley(17)
    vals = [random_subset_id_probability(G, s, mode="exact").bound for s in range(1, 18)]
    assert all(0 <= v <= 1 for v in vals)
    k = min_k(G)
    assert all(a <= b for a, b in zip(vals[: k - 1], vals[1:k]))


def test_monte_carlo_reproducible_and_thread_independent():
    G = cons.paley(29)
    a = random_subset_id_probability(G, 12, mode="monte-carlo", samples=25_000, seed=4, threads=1)
    b = random_subset_id_probability(G, 12, mode="monte-carlo", samples=25_000, seed=4, threads=3)
    c = random_subset_id_probability(G, 12, mode="monte-carlo", samples=25_000, seed=5)
    assert a == b
    assert a.successes != c.successes or a.seed != c.seed


def test_monte_carlo_close_to_exact():
    G = cons.paley(13)
    ex = random_subset_id_probability(G, 6, mode="exact")
    mc = random_subset_id_probability(G, 6, mode="monte-carlo", samples=40_000, seed=1)
    assert abs(mc.empirical - ex.empirical) <= 4 * mc.stderr + 1e-9


def test_probability_argument_errors():
    with pytest.raises(QueryError):
        random_subset_id_probability(cons.paley(13), 0)
    with pytest.raises(QueryError):
        random_subset_id_probability(cons.paley(13), 3, mode="bogus")


def test_existence_threshold():
    s = id_set_existence_threshold(29, 16)
    pairs = comb(30, 2)
    assert 29**s > pairs * 15**s and not 29 ** (s - 1) > pairs * 15 ** (s - 1)
    assert identification_bound(29, 16, s) > 0
    assert id_set_existence_threshold(5, 5) is None
    with pytest.raises(QueryError):
        id_set_existence_threshold(5, 1)
    with pytest.raises(QueryError):
        id_set_existence_threshold(5, 6)
