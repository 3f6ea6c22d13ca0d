"""Time the numba kernels against the numpy reference on realistic inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel runs once untimed (numba compiles or loads its cache), then
the best of ``--repeat`` runs is reported. Results are checked for equality.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from idgraphs import constructions as cons
from idgraphs import kernels
from idgraphs.bitset import to_words
from idgraphs.identify import _index_masks, _pair_diffs, small_subsets
from idgraphs.graph import neighborhood_of_set


def _cases():
    q4 = cons.hypercube(4)
    rs = cons.rshcd_plus_graph(3)
    p29 = cons.paley(29)
    ell2 = to_words([neighborhood_of_set(q4, X) for X in small_subsets(q4.n, 2)])
    ell1 = to_words([0] + list(rs.closed))
    ell2_big = to_words([neighborhood_of_set(rs, X) for X in small_subsets(rs.n, 2)])
    rng = np.random.default_rng(0)
    keys = rng.random((20_000, 29))
    subsets = _index_masks(np.argpartition(keys, 11, axis=1)[:, :12])
    diffs = _pair_diffs(p29)

    n = 13
    iu = np.triu_indices(n, 1)
    pu, pv = iu[0].astype(np.int64), iu[1].astype(np.int64)
    code = to_words([0] + [1 << x for x in range(n)])
    steps = 20_000
    picks = rng.integers(0, len(pu), size=steps)
    coins = rng.random(steps)

    def anneal(impl):
        c = code.copy()
        trace = np.zeros((256, 2), dtype=np.int64)
        res = impl.anneal_ell1(c, n - 7, pu, pv, picks, coins, 2.0, 0.999, 0.01, 5000, trace)
        return tuple(int(x) for x in res), c.tolist()

    return [
        ("min_pair_symdiff RSHCD64 ell=1", lambda impl: impl.min_pair_symdiff(ell1)),
        ("min_pair_symdiff Q4 ell=2", lambda impl: impl.min_pair_symdiff(ell2)),
        ("min_pair_symdiff RSHCD64 ell=2", lambda impl: impl.min_pair_symdiff(ell2_big)),
        ("count_violations RSHCD64 ell=2", lambda impl: impl.count_violations(ell2_big, 20)),
        ("count_identifying P29 20k x 12", lambda impl: impl.count_identifying(subsets, diffs)),
        ("anneal_ell1 n=13 20k steps", anneal),
    ]


def _best(fn, repeat):
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("numpy", kernels.numpy_impl)]
    if kernels.numba_impl is not None:
        impls.append(("numba", kernels.numba_impl))
    else:
        print("numba unavailable or disabled; timing numpy only")
    print(f"{'kernel':34s}" + "".join(f"{name:>12s}" for name, _ in impls) + ("     speedup" if len(impls) == 2 else ""))
    for label, case in _cases():
        times, outs = [], []
        for _, impl in impls:
            t, out = _best(lambda: case(impl), args.repeat)
            times.append(t)
            outs.append(out)
        if len(outs) == 2:
            a, b = outs
            same = (np.asarray(a) == np.asarray(b)).all() if not isinstance(a, tuple) else a == b
            if not same:
                raise SystemExit(f"{label}: backends disagree ({a!r} vs {b!r})")
        row = f"{label:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
