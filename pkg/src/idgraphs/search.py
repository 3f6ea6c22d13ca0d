"""Exhaustive catalogues of Gr(n, k, ell) and annealing search for witnesses."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from . import constructions as cons
from . import kernels
from .bitset import MAX_N, from_words, to_words
from .canon import canonical_form, canonical_graph
from .formats import from_graph6, to_graph6
from .graph import Graph, find_triangle
from .identify import QueryError, default_threads, gr_membership, min_k, small_subsets

EXHAUSTIVE_LIMIT = 11

# Found by anneal_search(SearchConfig(n=11, k=7, mode="anneal", seed=0)).
GR_11_7_WITNESS = r"J@HKiu\yvh_"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    ell: int = 1
    mode: str = "exhaustive"
    seed: int = 0
    max_steps: int = 1_000_000
    restarts: int = 20
    prune_pairs: bool = True
    heredity: bool = True
    t0: float = 2.0
    alpha: float = 0.999
    t_floor: float = 0.01
    plateau: int = 5000
    max_witnesses: int | None = None
    threads: int | None = None

    def validate(self) -> None:
        if not 1 <= self.k <= self.n:
            raise QueryError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.ell < 1:
            raise QueryError("ell must be >= 1")
        if self.mode == "exhaustive":
            if self.n > EXHAUSTIVE_LIMIT:
                raise QueryError(f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}")
        elif self.mode == "anneal":
            if self.n < 2:
                raise QueryError("anneal needs n >= 2")
            if self.max_steps < 1 or self.restarts < 1:
                raise QueryError("anneal needs max_steps >= 1 and restarts >= 1")
        else:
            raise QueryError(f"unknown mode {self.mode!r}")


@dataclass
class SearchOutcome:
    config: SearchConfig
    witnesses: list[Graph]
    explored: int
    status: str
    best_violations: int | None = None
    log: list[dict] = field(default_factory=list)

    def graph6_lines(self) -> list[str]:
        return [to_graph6(G) for G in self.witnesses]


# --- exhaustive ----------------------------------------------------------------


def _augment(parent: Graph) -> Iterable[Graph]:
    m = parent.n
    top = 1 << m
    for nbrs in range(1 << m):
        adj = [row | top if nbrs >> x & 1 else row for x, row in enumerate(parent.adj)]
        adj.append(nbrs)
        yield Graph(m + 1, adj)


def enumerate_graphs(n: int, keep: Callable[[Graph], bool] | None = None, counter: list | None = None) -> list[Graph]:
    """Canonical representatives of all graphs on n vertices passing ``keep`` at every level.

    ``keep`` must be hereditary (closed under deleting a vertex) for the
    result to be complete: children are grown only from kept parents.
    """
    level = {canonical_form(Graph(1, [0])): Graph(1, [0])}
    if keep is not None:
        level = {c: G for c, G in level.items() if keep(G)}
    for _ in range(2, n + 1):
        nxt: dict[bytes, Graph] = {}
        for parent in level.values():
            for child in _augment(parent):
                if counter is not None:
                    counter[0] += 1
                cf = canonical_form(child)
                if cf in nxt:
                    continue
                if keep is None or keep(child):
                    nxt[cf] = from_graph6(cf.decode())
        level = nxt
    return [level[c] for c in sorted(level)]


@lru_cache(maxsize=16)
def all_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_graphs(n))


def _pair_overlap_ok(G: Graph, limit: int) -> bool:
    closed = G.closed
    for x in range(G.n):
        cx = closed[x]
        for y in range(x + 1, G.n):
            if (cx & closed[y]).bit_count() > limit:
                return False
    return True


def enumerate_gr(config: SearchConfig) -> SearchOutcome:
    """All isomorphism classes in Gr(n, k, ell) by vertex augmentation.

    Levels below k keep graphs whose closed neighbourhoods pairwise share at
    most k-1 vertices (intersections only grow as vertices are added);
    levels m >= k keep members of Gr(m, k, ell), which is hereditary.
    """
    config.validate()
    if config.mode != "exhaustive":
        raise QueryError("enumerate_gr needs mode='exhaustive'")
    k, ell = config.k, config.ell

    def keep(G: Graph) -> bool:
        if G.n >= k and config.heredity:
            return gr_membership(G, k, ell).member
        if config.prune_pairs and not _pair_overlap_ok(G, k - 1):
            return False
        return True

    counter = [0]
    found = enumerate_graphs(config.n, keep, counter)
    witnesses = [G for G in found if gr_membership(G, k, ell).member]
    return SearchOutcome(config, witnesses, counter[0], "complete", 0 if witnesses else None)


# --- annealing -----------------------------------------------------------------


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu = np.triu_indices(n, 1)
    return iu[0].astype(np.int64), iu[1].astype(np.int64)


def _random_graph(n: int, rng: np.random.Generator, pu, pv) -> list[int]:
    bits = rng.integers(0, 2, size=pu.shape[0])
    adj = [0] * n
    for u, v, b in zip(pu.tolist(), pv.tolist(), bits.tolist()):
        if b:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def _anneal_generic(n, k, ell, adj, pu, pv, picks, coins, cfg, trace):
    subsets = small_subsets(n, ell)

    def cost_of(adj):
        closed = [row | 1 << x for x, row in enumerate(adj)]
        nb = []
        for X in subsets:
            m = 0
            x = X
            while x:
                low = x & -x
                m |= closed[low.bit_length() - 1]
                x ^= low
            nb.append(m)
        return kernels.count_violations(to_words(nb), n - k)

    cost = cost_of(adj)
    best = cost
    trace.append((0, cost))
    temp, last, steps = cfg.t0, 0, 0
    for step in range(picks.shape[0]):
        if cost == 0:
            break
        steps = step + 1
        u, v = int(pu[picks[step]]), int(pv[picks[step]])
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        new = cost_of(adj)
        delta = new - cost
        if delta <= 0 or coins[step] < math.exp(-delta / temp):
            cost = new
        else:
            adj[u] ^= 1 << v
            adj[v] ^= 1 << u
        temp = max(temp * cfg.alpha, cfg.t_floor)
        if cost < best:
            best, last = cost, step
            trace.append((step + 1, cost))
        elif step - last >= cfg.plateau:
            temp, last = cfg.t0, step
    return cost, steps, best, adj


TRACE_CAP = 4096


def _anneal_restart(cfg: SearchConfig, restart: int, seq: np.random.SeedSequence):
    n, k = cfg.n, cfg.k
    rng = np.random.Generator(np.random.PCG64(seq))
    pu, pv = _pairs(n)
    adj = _random_graph(n, rng, pu, pv)
    picks = rng.integers(0, pu.shape[0], size=cfg.max_steps)
    coins = rng.random(cfg.max_steps)
    if cfg.ell == 1:
        code = to_words([0] + [row | 1 << x for x, row in enumerate(adj)])
        trace = np.zeros((TRACE_CAP, 2), dtype=np.int64)
        cost, steps, best, nt = kernels.anneal_ell1(
            code, n - k, pu, pv, picks, coins, cfg.t0, cfg.alpha, cfg.t_floor, cfg.plateau, trace
        )
        rows = from_words(code)[1:]
        adj = [row & ~(1 << x) for x, row in enumerate(rows)]
        events = [tuple(int(a) for a in trace[i]) for i in range(nt)]
    else:
        events = []
        cost, steps, best, adj = _anneal_generic(n, k, cfg.ell, adj, pu, pv, picks, coins, cfg, events)
    return int(cost), int(steps), int(best), adj, events


def anneal_search(config: SearchConfig) -> SearchOutcome:
    """Simulated annealing over single edge toggles.

    Cost is the number of pairs X != Y (|X|, |Y| <= ell) with
    |N[X] ^ N[Y]| <= n - k, so cost 0 means membership. Each restart
    draws its own PCG64 stream from ``seed``; a restart stops at cost 0.
    Every returned witness is re-verified with :func:`gr_membership`.
    """
    config.validate()
    if config.mode != "anneal":
        raise QueryError("anneal_search needs mode='anneal'")
    seqs = np.random.SeedSequence(config.seed).spawn(config.restarts)
    threads = config.threads or default_threads()
    jobs = list(range(config.restarts))
    results = []
    if threads > 1 and config.max_witnesses is None:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda r: _anneal_restart(config, r, seqs[r]), jobs))
    else:
        for r in jobs:
            results.append(_anneal_restart(config, r, seqs[r]))
            if config.max_witnesses is not None and sum(1 for res in results if res[0] == 0) >= config.max_witnesses:
                break
    seen: dict[bytes, Graph] = {}
    log = []
    explored = 0
    best_overall = None
    all_found = len(results) == config.restarts
    for r, (cost, steps, best, adj, events) in enumerate(results):
        explored += steps
        best_overall = best if best_overall is None else min(best_overall, best)
        for step, c in events:
            log.append({"seed": config.seed, "restart": r, "step": step, "cost": c})
        if cost == 0:
            G = Graph(config.n, adj)
            if not gr_membership(G, config.k, config.ell).member:
                raise AssertionError("annealing returned a non-member at cost 0")
            seen.setdefault(canonical_form(G), canonical_graph(G))
        else:
            all_found = False
    if len(results) < config.restarts:
        status = "witness-limit"
    else:
        status = "complete" if all_found else "budget-exhausted"
    witnesses = [seen[c] for c in sorted(seen)]
    return SearchOutcome(config, witnesses, explored, status, best_overall, log)


def run_search(config: SearchConfig) -> SearchOutcome:
    return enumerate_gr(config) if config.mode == "exhaustive" else anneal_search(config)


# --- lower bounds from the construction library ------------------------------


@dataclass(frozen=True)
class Construction:
    name: str
    n: int
    k: int
    build: Callable[[], Graph]


def _paley_orders() -> list[int]:
    from .fields import odd_prime_power

    return [q for q in range(5, MAX_N + 1) if q % 4 == 1 and odd_prime_power(q) is not None]


@lru_cache(maxsize=1)
def construction_library() -> tuple[Construction, ...]:
    """Constructions with their claimed (n, k); every claim is re-verified on use."""
    lib = [
        Construction("C4", 4, 3, lambda: cons.cycle(4)),
        Construction("Q3", 8, 5, lambda: cons.hypercube(3)),
        Construction("cube_centre", 9, 6, cons.cube_with_centre),
    ]
    if GR_11_7_WITNESS is not None:
        lib.append(Construction("search-witness", 11, 7, lambda: from_graph6(GR_11_7_WITNESS)))
    srgs = [(f"P({q})", cons.paley_params(q), (lambda q=q: cons.paley(q))) for q in _paley_orders()]
    srgs += [(f"RSHCD+({4 ** r})", cons.rshcd_params(r), (lambda r=r: cons.rshcd_plus_graph(r))) for r in range(1, 5) if 4**r <= MAX_N]
    srgs.append(("K(7,2)", cons.SrgParams(21, 10, 3, 6), lambda: cons.kneser(7, 2)))
    srgs.append(("Latin(6)^c", cons.SrgParams(36, 20, 10, 12), lambda: cons.latin_square_complement(6)))
    for name, p, build in srgs:
        k0 = cons.srg_min_k(p)
        lib.append(Construction(name, p.n, k0, build))
        if p.t <= k0 - 2 and p.n + 1 <= MAX_N:
            lib.append(Construction(f"{name}+apex", p.n + 1, k0 + 1, (lambda b=build: cons.add_universal_vertex(b()))))
        ek = cons.srg_extend_k0(p)
        if ek <= p.n:
            for i in range(1, min(p.n + 1, MAX_N - p.n) + 1):
                lib.append(
                    Construction(f"{name}+ext{i}", p.n + i, ek + i, (lambda b=build, p=p, i=i: cons.srg_extend(b(), p, i)))
                )
    return tuple(lib)


@dataclass(frozen=True)
class LowerBound:
    k: int
    n: int
    example: str
    witness: Graph


def xi_lower_bound(k: int) -> LowerBound:
    """Largest verified order n with a construction in Gr(n, k); E_k is the fallback."""
    if k < 1:
        raise QueryError("k must be >= 1")
    cands = sorted(
        (c for c in construction_library() if c.k <= k <= c.n and c.n > k),
        key=lambda c: (-c.n, c.k, c.name),
    )
    for c in cands:
        G = c.build()
        if G.n != c.n or not gr_membership(G, k).member:
            raise AssertionError(f"construction {c.name} does not reach Gr({c.n},{k})")
        return LowerBound(k, c.n, c.name, G)
    if k == 1:
        return LowerBound(1, 1, "E1", cons.empty(1))
    if k == 2:
        return LowerBound(2, 2, "E2", cons.empty(2))
    return LowerBound(k, k, f"E{k}", cons.empty(k))


# --- extremal property checks --------------------------------------------------


@dataclass
class ExtremalReport:
    checked: int = 0
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_extremal_properties(graphs: SearchOutcome | Iterable[Graph], k: int | None = None) -> ExtremalReport:
    """Check the triangle requirement and the triangle order bound on ell = 1 witnesses.

    Both are applied at k* = min_k(G), the strongest instance; ``k`` if given
    must also admit G.
    """
    if isinstance(graphs, SearchOutcome):
        k = graphs.config.k if k is None else k
        graphs = graphs.witnesses
    rep = ExtremalReport()
    for G in graphs:
        rep.checked += 1
        g6 = to_graph6(G)
        ks = min_k(G)
        if ks is None or (k is not None and ks > k):
            rep.violations.append((g6, "not a member of Gr(n,k)"))
            continue
        tri = find_triangle(G) is not None
        if ks >= 6 and G.n >= 2 * ks - 2 and not tri:
            rep.violations.append((g6, f"no triangle although k={ks} >= 6 and n={G.n} >= 2k-2"))
        if tri and G.n > 3 * ks - 9:
            rep.violations.append((g6, f"triangle present but n={G.n} > 3k-9={3 * ks - 9}"))
    return rep


def no_isolated_vertices(G: Graph) -> bool:
    return min(G.degrees) > 0
