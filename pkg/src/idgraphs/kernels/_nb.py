"""numba-compiled kernels. Same signatures and results as :mod:`._np`."""

import math

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)
_ONE = np.uint64(1)


@njit(cache=True, inline="always")
def _pop(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True, inline="always")
def _pop_xor(a, i, b, j):
    s = 0
    for w in range(a.shape[1]):
        s += _pop(a[i, w] ^ b[j, w])
    return s


@njit(cache=True, nogil=True)
def min_pair_symdiff(masks):
    m = masks.shape[0]
    best = 1 << 30
    bi = -1
    bj = -1
    for i in range(m):
        for j in range(i + 1, m):
            d = _pop_xor(masks, i, masks, j)
            if d < best:
                best = d
                bi = i
                bj = j
                if best == 0:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True, nogil=True)
def count_violations(masks, thresh):
    m = masks.shape[0]
    c = 0
    for i in range(m):
        for j in range(i + 1, m):
            if _pop_xor(masks, i, masks, j) <= thresh:
                c += 1
    return c


@njit(cache=True, nogil=True)
def count_identifying(subsets, diffs):
    nw = subsets.shape[1]
    hits = 0
    for b in range(subsets.shape[0]):
        ok = True
        for p in range(diffs.shape[0]):
            hit = False
            for w in range(nw):
                if subsets[b, w] & diffs[p, w]:
                    hit = True
                    break
            if not hit:
                ok = False
                break
        if ok:
            hits += 1
    return hits


@njit(cache=True, inline="always")
def _toggle(code, a, v):
    w = v >> 6
    code[a, w] ^= _ONE << np.uint64(v & 63)


@njit(cache=True, inline="always")
def _touching(code, a, skip, thresh):
    c = 0
    for b in range(code.shape[0]):
        if b != a and b != skip and _pop_xor(code, a, code, b) <= thresh:
            c += 1
    return c


@njit(cache=True, nogil=True)
def anneal_ell1(code, thresh, pair_u, pair_v, picks, coins, t0, alpha, t_floor, plateau, trace):
    """Edge-toggle annealing on the neighbourhood code.

    ``code`` row 0 is the empty set, row ``x+1`` is N[x]; it is updated in
    place and holds the final state on return. Returns
    ``(cost, steps_taken, best_cost, n_trace)``; ``trace`` receives
    ``(step, cost)`` at every new best.
    """
    cost = count_violations(code, thresh)
    best = cost
    n_trace = 0
    if n_trace < trace.shape[0]:
        trace[n_trace, 0] = 0
        trace[n_trace, 1] = cost
        n_trace += 1
    temp = t0
    last = 0
    steps = 0
    for step in range(picks.shape[0]):
        if cost == 0:
            break
        steps = step + 1
        u = pair_u[picks[step]]
        v = pair_v[picks[step]]
        a = u + 1
        b = v + 1
        old = _touching(code, a, -1, thresh) + _touching(code, b, a, thresh)
        _toggle(code, a, v)
        _toggle(code, b, u)
        new = _touching(code, a, -1, thresh) + _touching(code, b, a, thresh)
        delta = new - old
        if delta <= 0 or coins[step] < math.exp(-delta / temp):
            cost += delta
        else:
            _toggle(code, a, v)
            _toggle(code, b, u)
        temp = max(temp * alpha, t_floor)
        if cost < best:
            best = cost
            last = step
            if n_trace < trace.shape[0]:
                trace[n_trace, 0] = step + 1
                trace[n_trace, 1] = cost
                n_trace += 1
        elif step - last >= plateau:
            temp = t0
            last = step
    return cost, steps, best, n_trace
