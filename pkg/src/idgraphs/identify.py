"""Identification predicates and membership in Gr(n, k, ell).

Vertex sets are int bitmasks. Subsets ``X`` with ``|X| <= ell`` are always
enumerated size-lexicographically (empty set first), which fixes the
witness pair reported when several pairs attain the minimum.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, islice
from math import comb

import numpy as np

from . import kernels
from .bitset import WORDS, full_mask, mask_of, members, popcount, to_words
from .graph import Graph, neighborhood_of_set

EXACT_BUDGET = 2_000_000
DEFAULT_SAMPLES = 100_000
MC_CHUNK = 10_000
THREADS_ENV = "IDGRAPHS_THREADS"


class QueryError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def small_subsets(n: int, ell: int) -> list[int]:
    out = [0]
    for size in range(1, min(ell, n) + 1):
        out.extend(mask_of(c) for c in combinations(range(n), size))
    return out


@lru_cache(maxsize=256)
def subset_neighborhoods(G: Graph, ell: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """All X with |X| <= ell and the matching N[X], in enumeration order."""
    subsets = small_subsets(G.n, ell)
    return tuple(subsets), tuple(neighborhood_of_set(G, X) for X in subsets)


@lru_cache(maxsize=256)
def _subset_words(G: Graph, ell: int) -> np.ndarray:
    return to_words(subset_neighborhoods(G, ell)[1])


def i_set(G: Graph, C: int, X: int) -> int:
    """I(C; X) = N[X] & C."""
    return neighborhood_of_set(G, X) & C


def find_unidentified_pair(G: Graph, C: int, ell: int = 1) -> tuple[int, int] | None:
    """First pair X != Y (|X|, |Y| <= ell) with I(C;X) = I(C;Y), else None."""
    if ell < 1:
        raise QueryError("ell must be >= 1")
    subsets, nbhd = subset_neighborhoods(G, ell)
    seen: dict[int, int] = {}
    for X, NX in zip(subsets, nbhd):
        trace = NX & C
        if trace in seen:
            return seen[trace], X
        seen[trace] = X
    return None


def is_identifying(G: Graph, C: int, ell: int = 1) -> bool:
    return find_unidentified_pair(G, C, ell) is None


@dataclass(frozen=True)
class MembershipVerdict:
    n: int
    k: int
    ell: int
    member: bool
    min_symdiff: int
    witness: tuple[int, int] | None

    def witness_sets(self) -> tuple[list[int], list[int]] | None:
        if self.witness is None:
            return None
        return members(self.witness[0]), members(self.witness[1])


@lru_cache(maxsize=1024)
def min_symdiff(G: Graph, ell: int = 1) -> tuple[int, tuple[int, int] | None]:
    """min |N[X] ^ N[Y]| over X != Y with |X|, |Y| <= ell, and the first pair attaining it."""
    if ell < 1:
        raise QueryError("ell must be >= 1")
    subsets, _ = subset_neighborhoods(G, ell)
    d, i, j = kernels.min_pair_symdiff(_subset_words(G, ell))
    return int(d), (subsets[i], subsets[j])


def _check_k(G: Graph, k: int) -> None:
    if not 1 <= k <= G.n:
        raise QueryError(f"k must be in 1..{G.n}, got {k}")


def corollary_membership(G: Graph, k: int) -> bool:
    """ell = 1 test through minimum degree and the pairwise overlap bound."""
    _check_k(G, k)
    n = G.n
    if min(G.degrees) < n - k:
        return False
    universe = full_mask(n)
    closed = G.closed
    worst = 0
    for x in range(n):
        for y in range(x + 1, n):
            inter = closed[x] & closed[y]
            outside = universe & ~(closed[x] | closed[y])
            worst = max(worst, popcount(inter) + popcount(outside))
    return worst <= k - 1


def gr_membership(G: Graph, k: int, ell: int = 1, method: str = "generic") -> MembershipVerdict:
    """Decide G in Gr(n, k, ell): n - min_symdiff <= k - 1.

    ``method="corollary"`` (ell = 1 only) decides membership through
    :func:`corollary_membership`; min_symdiff and witness are still reported.
    """
    _check_k(G, k)
    d, pair = min_symdiff(G, ell)
    if method == "generic":
        member = G.n - d <= k - 1
    elif method == "corollary":
        if ell != 1:
            raise QueryError("the degree and overlap test only applies to ell = 1")
        member = corollary_membership(G, k)
    else:
        raise QueryError(f"unknown method {method!r}")
    return MembershipVerdict(G.n, k, ell, member, d, pair)


def is_member(G: Graph, k: int, ell: int = 1) -> bool:
    return gr_membership(G, k, ell).member


def min_k(G: Graph, ell: int = 1) -> int | None:
    """Smallest k with G in Gr(n, k, ell); None if two small sets are twins."""
    d, _ = min_symdiff(G, ell)
    if d == 0:
        return None
    return min(G.n, max(1, G.n - d + 1))


def brute_force_membership(G: Graph, k: int, ell: int = 1, budget: int = 10**6) -> bool:
    """Check every k-subset literally. Oracle for :func:`gr_membership`."""
    _check_k(G, k)
    if comb(G.n, k) > budget:
        raise BudgetExceeded(f"C({G.n},{k}) = {comb(G.n, k)} exceeds budget {budget}")
    subsets, nbhd = subset_neighborhoods(G, ell)
    size = len(subsets)
    for c in combinations(range(G.n), k):
        C = mask_of(c)
        if len({NX & C for NX in nbhd}) != size:
            return False
    return True


# --- minimum identifying sets -------------------------------------------------


@dataclass(frozen=True)
class MinIdentifyingSet:
    size: int
    witness: int
    nodes: int

    @property
    def vertices(self) -> list[int]:
        return members(self.witness)


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length() if m > 1 else 0


def _split(classes, codes, v):
    out = []
    bit = 1 << v
    for cls in classes:
        a = [i for i in cls if codes[i] & bit]
        if len(a) == 0 or len(a) == len(cls):
            out.append(cls)
            continue
        b = [i for i in cls if not codes[i] & bit]
        if len(a) > 1:
            out.append(a)
        if len(b) > 1:
            out.append(b)
    return out


def min_identifying_set(G: Graph, ell: int = 1) -> MinIdentifyingSet | None:
    """Exact minimum (1, <= ell)-identifying set by iterative-deepening branch and bound.

    None when V itself is not identifying. Candidates are tried by degree
    descending, ties by index.
    """
    _, codes = subset_neighborhoods(G, ell)
    m = len(codes)
    if len(set(codes)) < m:
        return None
    forced = 0
    for i in range(m):
        for j in range(i + 1, m):
            d = codes[i] ^ codes[j]
            if popcount(d) == 1:
                forced |= d
    classes = [list(range(m))]
    for v in members(forced):
        classes = _split(classes, codes, v)
    order = [v for v in sorted(range(G.n), key=lambda v: (-G.degrees[v], v)) if not forced >> v & 1]
    n_forced = popcount(forced)
    nodes = 0

    def need(cls_list):
        return max((_ceil_log2(len(c)) for c in cls_list), default=0)

    def dfs(cls_list, start, left, chosen):
        nonlocal nodes
        nodes += 1
        if not cls_list:
            return chosen
        if need(cls_list) > left or len(order) - start < left:
            return None
        for pos in range(start, len(order) - left + 1):
            v = order[pos]
            nxt = _split(cls_list, codes, v)
            if nxt is cls_list or nxt == cls_list:
                continue
            got = dfs(nxt, pos + 1, left - 1, chosen | 1 << v)
            if got is not None:
                return got
        return None

    lower = max(_ceil_log2(m), n_forced + need(classes))
    for size in range(lower, G.n + 1):
        got = dfs(classes, 0, size - n_forced, forced)
        if got is not None:
            return MinIdentifyingSet(popcount(got), got, nodes)
    return None  # unreachable: V is identifying


# --- random subsets -----------------------------------------------------------


def identification_bound(n: int, k: int, s: int) -> Fraction:
    """1 - C(n+1,2) C(k-1,s) / C(n,s), unclamped."""
    return 1 - Fraction(comb(n + 1, 2) * comb(k - 1, s), comb(n, s))


@dataclass(frozen=True)
class ProbabilityEstimate:
    s: int
    k: int | None
    bound: Fraction
    raw_bound: Fraction | None
    empirical: float
    successes: int
    trials: int
    method: str
    seed: int | None

    @property
    def stderr(self) -> float:
        if self.method == "exact":
            return 0.0
        p = self.empirical
        return math.sqrt(p * (1 - p) / self.trials)


def _pair_diffs(G: Graph) -> np.ndarray:
    codes = [0] + list(G.closed)
    return to_words([a ^ b for a, b in combinations(codes, 2)])


def _index_masks(idx: np.ndarray) -> np.ndarray:
    out = np.zeros((idx.shape[0], WORDS), dtype=np.uint64)
    for w in range(WORDS):
        local = idx - 64 * w
        inside = (local >= 0) & (local < 64)
        bits = np.where(inside, np.left_shift(np.uint64(1), np.clip(local, 0, 63).astype(np.uint64)), np.uint64(0))
        out[:, w] = np.bitwise_or.reduce(bits, axis=1)
    return out


def _mc_chunk(args):
    n, s, count, seed_seq, diffs = args
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    keys = rng.random((count, n))
    idx = np.argpartition(keys, s - 1, axis=1)[:, :s]
    return kernels.count_identifying(_index_masks(idx), diffs)


def random_subset_id_probability(
    G: Graph,
    s: int,
    mode: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    k: int | None = None,
    exact_budget: int = EXACT_BUDGET,
    threads: int | None = None,
) -> ProbabilityEstimate:
    """Probability that a uniform random s-subset is identifying, with the analytic bound.

    ``k`` defaults to ``min_k(G)``. ``mode`` is ``exact``, ``monte-carlo`` or
    ``auto`` (exact when C(n, s) <= exact_budget). Monte Carlo chunks use
    independent PCG64 streams spawned from ``seed``, so results do not depend
    on ``threads``.
    """
    n = G.n
    if not 1 <= s <= n:
        raise QueryError(f"s must be in 1..{n}, got {s}")
    if k is None:
        k = min_k(G, 1)
    if k is not None:
        raw = identification_bound(n, k, s)
        bound = min(Fraction(1), max(Fraction(0), raw))
    else:
        raw, bound = None, Fraction(0)
    diffs = _pair_diffs(G)
    if mode == "auto":
        mode = "exact" if comb(n, s) <= exact_budget else "monte-carlo"
    threads = threads or default_threads()
    if mode == "exact":
        total = comb(n, s)
        hits = 0
        it = combinations(range(n), s)
        while True:
            block = list(islice(it, 100_000))
            if not block:
                break
            hits += kernels.count_identifying(_index_masks(np.array(block, dtype=np.int64)), diffs)
        return ProbabilityEstimate(s, k, bound, raw, hits / total, hits, total, "exact", None)
    if mode != "monte-carlo":
        raise QueryError(f"unknown mode {mode!r}")
    n_chunks = -(-samples // MC_CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    jobs = [(n, s, min(MC_CHUNK, samples - c * MC_CHUNK), seqs[c], diffs) for c in range(n_chunks)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            hits = sum(pool.map(_mc_chunk, jobs))
    else:
        hits = sum(map(_mc_chunk, jobs))
    return ProbabilityEstimate(s, k, bound, raw, hits / samples, hits, samples, "monte-carlo", seed)


def id_set_existence_threshold(n: int, k: int) -> int | None:
    """Smallest s <= n with log C(n+1,2) / log(n/(k-1)) < s, or None if none exists.

    Compared exactly as n^s > C(n+1,2) (k-1)^s.
    """
    if k < 2:
        raise QueryError("k must be >= 2")
    if k > n:
        raise QueryError("k must be <= n")
    pairs = comb(n + 1, 2)
    for s in range(1, n + 1):
        if n**s > pairs * (k - 1) ** s:
            return s
    return None
