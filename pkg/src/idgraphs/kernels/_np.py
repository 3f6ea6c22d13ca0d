"""Pure numpy / Python kernels. Reference path when numba is disabled."""

import math

import numpy as np

from ..bitset import from_words, to_words

_CHUNK_ELEMS = 1 << 22


def _pairwise_popxor(masks, lo, hi):
    x = masks[lo:hi, None, :] ^ masks[None, :, :]
    return np.bitwise_count(x).sum(axis=2, dtype=np.int64)


def min_pair_symdiff(masks):
    m = masks.shape[0]
    rows = max(1, _CHUNK_ELEMS // max(m, 1))
    best, bi, bj = 1 << 30, -1, -1
    for lo in range(0, m, rows):
        hi = min(m, lo + rows)
        d = _pairwise_popxor(masks, lo, hi)
        idx = np.arange(lo, hi)[:, None]
        d[np.arange(m)[None, :] <= idx] = 1 << 30
        flat = int(np.argmin(d))
        r, c = divmod(flat, m)
        if d[r, c] < best:
            best, bi, bj = int(d[r, c]), lo + r, c
            if best == 0:
                break
    return best, bi, bj


def count_violations(masks, thresh):
    m = masks.shape[0]
    rows = max(1, _CHUNK_ELEMS // max(m, 1))
    total = 0
    for lo in range(0, m, rows):
        hi = min(m, lo + rows)
        d = _pairwise_popxor(masks, lo, hi)
        upper = np.arange(m)[None, :] > np.arange(lo, hi)[:, None]
        total += int(np.count_nonzero((d <= thresh) & upper))
    return total


def count_identifying(subsets, diffs):
    if diffs.shape[0] == 0:
        return subsets.shape[0]
    rows = max(1, _CHUNK_ELEMS // diffs.shape[0])
    hits = 0
    for lo in range(0, subsets.shape[0], rows):
        s = subsets[lo : lo + rows]
        hit = ((s[:, None, :] & diffs[None, :, :]) != 0).any(axis=2)
        hits += int(np.count_nonzero(hit.all(axis=1)))
    return hits


def anneal_ell1(code, thresh, pair_u, pair_v, picks, coins, t0, alpha, t_floor, plateau, trace):
    rows = from_words(code)
    m = len(rows)

    def touching(a, skip):
        ra = rows[a]
        return sum(1 for b in range(m) if b != a and b != skip and (ra ^ rows[b]).bit_count() <= thresh)

    cost = sum(
        1 for i in range(m) for j in range(i + 1, m) if (rows[i] ^ rows[j]).bit_count() <= thresh
    )
    best = cost
    n_trace = 0
    if n_trace < trace.shape[0]:
        trace[n_trace] = (0, cost)
        n_trace += 1
    temp = t0
    last = 0
    steps = 0
    pu = pair_u.tolist()
    pv = pair_v.tolist()
    picks = picks.tolist()
    coins = coins.tolist()
    for step in range(len(picks)):
        if cost == 0:
            break
        steps = step + 1
        u = pu[picks[step]]
        v = pv[picks[step]]
        a, b = u + 1, v + 1
        old = touching(a, -1) + touching(b, a)
        rows[a] ^= 1 << v
        rows[b] ^= 1 << u
        new = touching(a, -1) + touching(b, a)
        delta = new - old
        if delta <= 0 or coins[step] < math.exp(-delta / temp):
            cost += delta
        else:
            rows[a] ^= 1 << v
            rows[b] ^= 1 << u
        temp = max(temp * alpha, t_floor)
        if cost < best:
            best = cost
            last = step
            if n_trace < trace.shape[0]:
                trace[n_trace] = (step + 1, cost)
                n_trace += 1
        elif step - last >= plateau:
            temp = t0
            last = step
    code[:] = to_words(rows)[:, : code.shape[1]]
    return cost, steps, best, n_trace
