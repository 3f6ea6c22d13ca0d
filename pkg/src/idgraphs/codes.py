"""Neighbourhood codes, the Plotkin bound, and closed-form bounds on Xi(k, ell).

The neighbourhood code of G has the zero word plus the characteristic
vector of every N[x]; its minimum Hamming distance is the ell = 1 minimum
symmetric difference, so G is in Gr(n, k) iff that distance is >= n-k+1.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import constructions as cons
from .graph import Graph
from .identify import gr_membership
from .search import xi_lower_bound

# Exact values established for small k (complete catalogues up to k = 4,
# code and triangle bounds meeting the constructions for k = 5, 6).
KNOWN_XI = {1: 1, 2: 2, 3: 4, 4: 5, 5: 8, 6: 9}
VERIFY_PAIR_BUDGET = 50_000_000


class InapplicableBound(ValueError):
    pass


@dataclass(frozen=True)
class NeighborhoodCode:
    n: int
    codewords: np.ndarray  # (n+1, n) uint8; row 0 is the zero word

    def weights(self) -> np.ndarray:
        return self.codewords.sum(axis=1, dtype=np.int64)


def neighborhood_code(G: Graph) -> NeighborhoodCode:
    words = np.zeros((G.n + 1, G.n), dtype=np.uint8)
    words[1:] = G.to_matrix()
    words[np.arange(1, G.n + 1), np.arange(G.n)] = 1
    words.setflags(write=False)
    return NeighborhoodCode(G.n, words)


def distance_matrix(code: NeighborhoodCode) -> np.ndarray:
    y = code.codewords.astype(np.int64)
    w = y.sum(axis=1)
    return w[:, None] + w[None, :] - 2 * (y @ y.T)


def min_distance_pair(code: NeighborhoodCode) -> tuple[int, tuple[int, int]]:
    d = distance_matrix(code)
    iu = np.triu_indices(d.shape[0], 1)
    vals = d[iu]
    a = int(np.argmin(vals))
    return int(vals[a]), (int(iu[0][a]), int(iu[1][a]))


def min_distance(code: NeighborhoodCode) -> int:
    return min_distance_pair(code)[0]


def plotkin_bound(n: int, d: int) -> int:
    """A(n, d) <= 2 floor(d / (2d - n)) when 2d > n."""
    if 2 * d <= n:
        raise InapplicableBound(f"Plotkin bound needs 2d > n, got n={n}, d={d}")
    return 2 * (d // (2 * d - n))


@dataclass(frozen=True)
class Refutation:
    k: int
    refuted: bool
    reason: str
    min_distance: int
    pair: tuple[int, int] | None
    distance_sum: int
    required_sum: int
    column_cap: int
    notes: tuple[str, ...] = ()


def refute_2k_minus_1(k: int, G: Graph) -> Refutation:
    """Show G (on 2k-1 vertices) is not in Gr(2k-1, k).

    Either some codeword pair is closer than k, or every distance would have
    to equal k, which forces k odd (from the degree sum) and k even (from the
    halves of each symmetric difference) at once.
    """
    n = 2 * k - 1
    if G.n != n:
        raise ValueError(f"graph must have 2k-1 = {n} vertices, got {G.n}")
    code = neighborhood_code(G)
    dist = distance_matrix(code)
    d, pair = min_distance_pair(code)
    iu = np.triu_indices(n + 1, 1)
    total = int(dist[iu].sum())
    required = comb(n + 1, 2) * k
    ones = code.codewords.sum(axis=0, dtype=np.int64)
    column_cap = int((ones * (2 * k - ones)).sum())
    if d < k:
        return Refutation(k, True, "distance", d, pair, total, required, column_cap)
    notes = []
    if total < required:
        notes.append("distance sum below the all-pairs minimum")
    if column_cap < required:
        notes.append("column counting caps the distance sum below the required total")
    if not (dist[iu] == k).all():
        notes.append("equality forces every distance to equal k, but it does not")
    if (n * (k - 1)) % 2 == 0:
        notes.append("degree sum (2k-1)(k-1) is even only for odd k")
    if k % 2 == 0:
        notes.append("each symmetric difference splits into halves of size k/2, needing even k")
    notes.append("k cannot be both odd and even")
    return Refutation(k, True, "parity", d, pair, total, required, column_cap, tuple(notes))


def ell2_feasible(n: int, k: int) -> bool:
    """n + (n-k+2)(n-k+3)/(n-1) <= 2k-3, a necessary condition for Gr(n, k, 2) with n > k."""
    if n <= k:
        raise ValueError("condition only applies for n > k")
    return n + Fraction((n - k + 2) * (n - k + 3), n - 1) <= 2 * k - 3


def _ell2_sqrt_bound(k: int) -> int:
    """Largest n with n < (1 + 1/sqrt 2)(k-2) + 1/4, in integers."""
    m = k - 2
    n = k
    while True:
        t = 4 * (n + 1) - 4 * m - 1
        if t > 0 and t * t >= 8 * m * m:
            return n
        n += 1


def upper_bounds(k: int, ell: int = 1) -> dict[str, int]:
    """Every applicable closed-form upper bound on Xi(k, ell), keyed by source."""
    out: dict[str, int] = {}
    if ell == 1:
        if k == 1:
            out["k=1"] = 1
        if k >= 2:
            out["3k-3"] = 3 * k - 3
            out["2k-2 (code)"] = 2 * k - 2
        if k >= 6:
            out["3k-9 (triangle)"] = 3 * k - 9
        if k in KNOWN_XI:
            out["small-k catalogue"] = KNOWN_XI[k]
        return out
    out["2k-2l-1 (degree)"] = 2 * k - 2 * ell - 1 if k >= 2 * ell + 2 else k
    out["l/(l-1)(k-2)"] = max((ell * (k - 2)) // (ell - 1), k)
    if ell == 2:
        out["sqrt2 (l=2)"] = k if k <= 5 else _ell2_sqrt_bound(k)
        top = max(out.values())
        feas = [n for n in range(k + 1, top + 1) if ell2_feasible(n, k)]
        out["overlap (l=2)"] = max(feas) if feas else k
    return out


@dataclass(frozen=True)
class BoundReport:
    k: int
    ell: int
    lower: int
    upper: int
    exact: int | None
    example: str
    upper_sources: tuple[str, ...]
    witness: Graph | None = None

    def csv_row(self) -> list:
        return [self.k, self.lower, self.upper, self.example]


def _subset_count(n: int, ell: int) -> int:
    return sum(comb(n, i) for i in range(ell + 1))


def hypercube_lower_bound(k: int, ell: int) -> tuple[int, str, Graph] | None:
    """Largest verified hypercube Q_m in Gr(2^m, k, ell) for ell >= 2, or None."""
    best = None
    for m in range(max(2 * ell - 2, 4), 8):
        n = 1 << m
        km = n - m + 2 * ell - 2
        if not km <= k <= n or n == k:
            continue
        if _subset_count(n, ell) ** 2 // 2 > VERIFY_PAIR_BUDGET:
            continue
        G = cons.hypercube(m)
        if not gr_membership(G, k, ell).member:
            raise AssertionError(f"Q_{m} is not in Gr({n},{k},{ell})")
        best = (n, f"Q{m}", G)
    return best


def xi_bounds(k: int, ell: int = 1) -> BoundReport:
    if k < 1 or ell < 1:
        raise ValueError("need k >= 1 and ell >= 1")
    ups = upper_bounds(k, ell)
    upper = min(ups.values())
    sources = tuple(sorted(s for s, v in ups.items() if v == upper))
    if ell == 1:
        lb = xi_lower_bound(k)
        lower, example, witness = lb.n, lb.example, lb.witness
    else:
        lower, example, witness = k, f"E{k}", cons.empty(k)
        hc = hypercube_lower_bound(k, ell)
        if hc is not None and hc[0] > lower:
            lower, example, witness = hc
    if lower > upper:
        raise AssertionError(f"lower bound {lower} exceeds upper bound {upper} for k={k}, ell={ell}")
    exact = lower if lower == upper else None
    return BoundReport(k, ell, lower, upper, exact, example, sources, witness)


def bounds_csv(ks, ell: int = 1) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "lower", "upper", "example"])
    for k in ks:
        w.writerow(xi_bounds(k, ell).csv_row())
    return buf.getvalue()

