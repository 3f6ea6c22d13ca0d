import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idgraphs import kernels
from idgraphs.bitset import MAX_N, WORDS, to_words

needs_numba = pytest.mark.skipif(kernels.numba_impl is None, reason="numba unavailable or disabled")
BACKENDS = [kernels.numpy_impl] + ([kernels.numba_impl] if kernels.numba_impl is not None else [])

masks_st = st.lists(st.integers(0, (1 << MAX_N) - 1), min_size=2, max_size=40)


def _brute_min(masks):
    best = None
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            d = (masks[i] ^ masks[j]).bit_count()
            if best is None or d < best[0]:
                best = (d, i, j)
    return best


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(masks=masks_st)
def test_min_pair_symdiff_matches_brute_force(impl, masks):
    assert tuple(map(int, impl.min_pair_symdiff(to_words(masks)))) == _brute_min(masks)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(masks=masks_st, thresh=st.integers(0, MAX_N))
def test_count_violations_matches_brute_force(impl, masks, thresh):
    want = sum(
        1 for i in range(len(masks)) for j in range(i + 1, len(masks)) if (masks[i] ^ masks[j]).bit_count() <= thresh
    )
    assert impl.count_violations(to_words(masks), thresh) == want


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(subsets=st.lists(st.integers(0, (1 << 70) - 1), min_size=1, max_size=30), diffs=st.lists(st.integers(1, (1 << 70) - 1), max_size=15))
def test_count_identifying_matches_brute_force(impl, subsets, diffs):
    want = sum(1 for s in subsets if all(s & d for d in diffs))
    assert impl.count_identifying(to_words(subsets), to_words(diffs).reshape(-1, WORDS)) == want


def test_min_pair_prefers_first_pair_on_ties():
    masks = to_words([0b11, 0b01, 0b10, 0b00])
    for impl in BACKENDS:
        assert tuple(map(int, impl.min_pair_symdiff(masks))) == (1, 0, 1)


def test_min_pair_handles_large_inputs_in_chunks():
    rng = np.random.default_rng(5)
    masks = [int(x) for x in rng.integers(0, 1 << 62, size=2100)]
    masks[1500] = masks[7]
    for impl in BACKENDS:
        assert tuple(map(int, impl.min_pair_symdiff(to_words(masks)))) == (0, 7, 1500)


def _anneal_inputs(seed, n=9):
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    pu, pv = iu[0].astype(np.int64), iu[1].astype(np.int64)
    rows = [1 << x for x in range(n)]
    for u, v in zip(pu, pv):
        if rng.random() < 0.5:
            rows[u] |= 1 << int(v)
            rows[v] |= 1 << int(u)
    steps = 4000
    picks = rng.integers(0, len(pu), size=steps)
    coins = rng.random(steps)
    return to_words([0] + rows), pu, pv, picks, coins


@needs_numba
@pytest.mark.parametrize("seed", range(8))
def test_anneal_backends_agree(seed):
    code, pu, pv, picks, coins = _anneal_inputs(seed)
    outs = []
    for impl in BACKENDS:
        c = code.copy()
        trace = np.zeros((512, 2), dtype=np.int64)
        res = impl.anneal_ell1(c, 3, pu, pv, picks, coins, 2.0, 0.999, 0.01, 500, trace)
        outs.append((tuple(map(int, res)), c.tolist(), trace[: int(res[3])].tolist()))
    assert outs[0] == outs[1]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_anneal_reported_cost_is_true_cost(impl):
    code, pu, pv, picks, coins = _anneal_inputs(1)
    trace = np.zeros((512, 2), dtype=np.int64)
    cost, steps, best, nt = impl.anneal_ell1(code, 3, pu, pv, picks, coins, 2.0, 0.999, 0.01, 500, trace)
    assert cost == kernels.numpy_impl.count_violations(code, 3)
    assert best <= cost and 1 <= nt
    # the code stays symmetric with a zero row on top
    rows = [int(r[0]) for r in code]
    assert rows[0] == 0
    for a in range(9):
        for b in range(9):
            assert (rows[a + 1] >> b & 1) == (rows[b + 1] >> a & 1)


def test_disable_flag_selects_numpy():
    env = dict(os.environ, IDGRAPHS_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from idgraphs import kernels; print(kernels.BACKEND, kernels.numba_impl)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.split() == ["numpy", "None"]
