"""Command-line interface: ``idgraphs <command> ...``.

Exit codes: 0 success (or member), 1 non-member, 2 bad arguments or
unparseable input, 3 infeasible request (no such object, budget exhausted).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import platform
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, kernels
from . import constructions as cons
from .codes import xi_bounds
from .formats import from_edge_list, from_graph6, read_graph6_lines, to_edge_list, to_graph6
from .graph import Graph, GraphError
from .identify import (
    DEFAULT_SAMPLES,
    THREADS_ENV,
    QueryError,
    default_threads,
    gr_membership,
    min_identifying_set,
    min_k,
    random_subset_id_probability,
)
from .search import SearchConfig, run_search

EXIT_OK = 0
EXIT_NONMEMBER = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- argument helpers ------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"a..b"``, ``"a"``, or comma-separated mixes like ``"1..6,33"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                a, b = int(lo), int(hi)
                if a > b:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad integer range {part!r}") from None
    if not out:
        raise UsageError("empty range")
    return out


def _ints(params: list[str], name: str, count: int) -> list[int]:
    if len(params) != count:
        raise UsageError(f"{name} takes {count} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"{name} parameters must be integers: {params}") from None


_SIMPLE = {
    "empty": (cons.empty, 1),
    "path": (cons.path, 1),
    "cycle": (cons.cycle, 1),
    "star": (cons.star, 1),
    "complete": (cons.complete, 1),
    "bipartite": (cons.complete_bipartite, 2),
    "complete_bipartite": (cons.complete_bipartite, 2),
    "hypercube": (cons.hypercube, 1),
    "paley": (cons.paley, 1),
    "rshcd": (cons.rshcd_plus_graph, 1),
    "kneser": (cons.kneser, 2),
    "latin": (cons.latin_square_graph, 1),
    "latin_complement": (cons.latin_square_complement, 1),
    "cube_centre": (cons.cube_with_centre, 0),
    "p3_k1": (cons.p3_plus_k1, 0),
}

CONSTRUCT_NAMES = sorted(_SIMPLE) + ["srg_extend"]


def build_construct(spec: str) -> Graph:
    """Build a graph from ``name:p1:p2``; parameters may also be comma-separated.

    ``srg_extend:<base spec>:<i>`` extends any SRG-producing base, e.g.
    ``srg_extend:paley:13:3``.
    """
    name, _, rest = spec.partition(":")
    params = [p for p in rest.replace(",", ":").split(":") if p] if rest else []
    if name == "srg_extend":
        if len(params) < 2:
            raise UsageError("srg_extend needs a base construction and i, e.g. srg_extend:paley:13:3")
        base = build_construct(":".join(params[:-1]))
        (i,) = _ints(params[-1:], "srg_extend i", 1)
        chk = cons.srg_check(base)
        if not chk:
            raise UsageError(f"srg_extend base is not strongly regular: {chk.reason}")
        return cons.srg_extend(base, chk.params, i)
    if name not in _SIMPLE:
        raise UsageError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCT_NAMES)}")
    fn, count = _SIMPLE[name]
    return fn(*_ints(params, name, count))


def load_graph(args) -> Graph:
    given = [x for x in (args.g6, args.edges, args.construct) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --g6, --edges, --construct")
    if args.construct is not None:
        return build_construct(args.construct)
    if args.edges is not None:
        with open(args.edges, encoding="ascii") as fh:
            return from_edge_list(fh.read())
    text = args.g6
    if os.path.isfile(text):
        with open(text, encoding="ascii") as fh:
            graphs = list(read_graph6_lines(fh))
        if len(graphs) != 1:
            raise UsageError(f"{text} holds {len(graphs)} graphs; exactly one is needed")
        return graphs[0]
    return from_graph6(text)


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph source (exactly one)")
    g.add_argument("--g6", help="graph6 string, or a file holding one graph6 line")
    g.add_argument("--edges", help="edge-list file: 'n m' header then m lines 'u v'")
    g.add_argument("--construct", help="name:params, e.g. paley:29, bipartite:2:3, srg_extend:paley:13:3")


def _fmt_set(vs: list[int]) -> str:
    return "{" + ",".join(map(str, vs)) + "}"


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _csv_writer(out: io.StringIO):
    return csv.writer(out, lineterminator="\n")


# --- commands ---------------------------------------------------------------------


def cmd_check(args, out) -> int:
    G = load_graph(args)
    v = gr_membership(G, args.k, args.ell, method=args.method)
    out.write(f"{'member' if v.member else 'non-member'}\n")
    out.write(f"n={v.n} k={v.k} ell={v.ell}\n")
    out.write(f"min_symdiff={v.min_symdiff} threshold={v.n - v.k + 1}\n")
    ws = v.witness_sets()
    if ws is not None:
        out.write(f"witness X={_fmt_set(ws[0])} Y={_fmt_set(ws[1])}\n")
    return EXIT_OK if v.member else EXIT_NONMEMBER


def cmd_mink(args, out) -> int:
    G = load_graph(args)
    k = min_k(G, args.ell)
    out.write(f"{'none' if k is None else k}\n")
    return EXIT_OK if k is not None else EXIT_INFEASIBLE


def cmd_minid(args, out) -> int:
    G = load_graph(args)
    res = min_identifying_set(G, args.ell)
    if res is None:
        out.write("none\n")
        return EXIT_INFEASIBLE
    out.write(f"size={res.size}\n")
    out.write(f"set={_fmt_set(res.vertices)}\n")
    return EXIT_OK


def cmd_prob(args, out) -> int:
    G = load_graph(args)
    s_values = parse_range(args.s) if args.s else list(range(1, G.n + 1))
    w = _csv_writer(out)
    w.writerow(["s", "bound", "bound_exact", "empirical", "stderr", "successes", "trials", "method"])
    for s in s_values:
        est = random_subset_id_probability(
            G, s, mode=args.mode, samples=args.samples, seed=args.seed, k=args.k, threads=args.threads
        )
        w.writerow(
            [
                s,
                repr(float(est.bound)),
                _fraction_str(est.bound),
                repr(est.empirical),
                repr(est.stderr),
                est.successes,
                est.trials,
                est.method,
            ]
        )
    return EXIT_OK


def cmd_construct(args, out) -> int:
    G = build_construct(args.spec)
    out.write(to_edge_list(G) if args.format == "edges" else to_graph6(G) + "\n")
    return EXIT_OK


def cmd_search(args, out) -> int:
    cfg = SearchConfig(
        n=args.n,
        k=args.k,
        ell=args.ell,
        mode=args.mode,
        seed=args.seed,
        max_steps=args.max_steps,
        restarts=args.restarts,
        max_witnesses=args.max_witnesses,
        threads=args.threads,
    )
    res = run_search(cfg)
    for line in res.graph6_lines():
        out.write(line + "\n")
    if args.log:
        with open(args.log, "w", encoding="utf-8", newline="\n") as fh:
            for rec in res.log:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
            fh.write(
                json.dumps(
                    {
                        "summary": True,
                        "status": res.status,
                        "explored": res.explored,
                        "witnesses": len(res.witnesses),
                        "best_violations": res.best_violations,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
    print(f"status={res.status} witnesses={len(res.witnesses)} explored={res.explored}", file=sys.stderr)
    return EXIT_OK if res.witnesses else EXIT_INFEASIBLE


def cmd_table(args, out) -> int:
    w = _csv_writer(out)
    w.writerow(["k", "lower", "upper", "example"])
    for k in parse_range(args.k):
        w.writerow(xi_bounds(k, args.ell).csv_row())
    return EXIT_OK


def adjacency_listing(G: Graph) -> str:
    from .bitset import members

    return "".join(f"  {x}: {' '.join(map(str, members(G.adj[x])))}\n" for x in range(G.n))


def cmd_catalog(args, out) -> int:
    res = run_search(SearchConfig(n=args.n, k=args.k, ell=args.ell, mode="exhaustive"))
    lines = res.graph6_lines()
    for line in lines:
        out.write(line + "\n")
    if not args.no_listing:
        for i, (G, line) in enumerate(zip(res.witnesses, lines)):
            out.write(f"\n# graph {i + 1} of {len(lines)}: {line}  n={G.n} m={G.num_edges}\n")
            out.write(adjacency_listing(G))
    return EXIT_OK


def cmd_replay(args, out) -> int:
    with open(args.manifest_file, encoding="utf-8") as fh:
        man = json.load(fh)
    buf = io.StringIO()
    code = run(man["argv"], buf)
    digest = hashlib.sha256(buf.getvalue().encode()).hexdigest()
    same = digest == man["output_sha256"] and code == man["exit_code"]
    out.write(buf.getvalue())
    print(f"replay {'matches' if same else 'DIFFERS from'} manifest (sha256 {digest})", file=sys.stderr)
    return EXIT_OK if same else EXIT_INFEASIBLE


# --- parser and entry point ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="idgraphs", description="Graphs whose identifying sets are all the k-subsets.")
    p.add_argument("--version", action="version", version=f"idgraphs {__version__}")
    _add_global(p, None)
    # global flags may also follow the subcommand; SUPPRESS keeps earlier values
    common = _Parser(add_help=False)
    _add_global(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _orig = sub.add_parser
    sub.add_parser = lambda *a, **kw: _orig(*a, parents=[common], **kw)

    c = sub.add_parser("check", help="decide membership in Gr(n,k,ell)")
    _add_source(c)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--ell", type=int, default=1)
    c.add_argument("--method", choices=("generic", "corollary"), default="generic")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("mink", help="smallest k with G in Gr(n,k,ell)")
    _add_source(c)
    c.add_argument("--ell", type=int, default=1)
    c.set_defaults(func=cmd_mink)

    c = sub.add_parser("minid", help="a minimum identifying set")
    _add_source(c)
    c.add_argument("--ell", type=int, default=1)
    c.set_defaults(func=cmd_minid)

    c = sub.add_parser("prob", help="CSV of random s-subset identifying probability vs the bound")
    _add_source(c)
    c.add_argument("--k", type=int, default=None, help="k for the bound (default min_k)")
    c.add_argument("--s", help="range like 1..29 (default 1..n)")
    c.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--mode", choices=("auto", "exact", "monte-carlo"), default="auto")
    c.set_defaults(func=cmd_prob)

    c = sub.add_parser("construct", help="emit a named construction")
    c.add_argument("spec", help=f"name:params; names: {', '.join(CONSTRUCT_NAMES)}")
    c.add_argument("--format", choices=("g6", "edges"), default="g6")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("search", help="exhaustive or annealing search for Gr(n,k,ell) members")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--ell", type=int, default=1)
    c.add_argument("--mode", choices=("exhaustive", "anneal"), default="exhaustive")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-steps", type=int, default=SearchConfig.max_steps)
    c.add_argument("--restarts", type=int, default=SearchConfig.restarts)
    c.add_argument("--max-witnesses", type=int, default=None)
    c.add_argument("--log", help="JSONL progress log path")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("table", help="CSV of lower/upper bounds on Xi(k, ell)")
    c.add_argument("--k", required=True, help="range like 1..20 or list 1..6,33")
    c.add_argument("--ell", type=int, default=1)
    c.set_defaults(func=cmd_table)

    c = sub.add_parser("catalog", help="all isomorphism classes in Gr(n,k,ell)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--ell", type=int, default=1)
    c.add_argument("--no-listing", action="store_true", help="graph6 lines only")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("replay", help="re-run a manifest and compare output digests")
    c.add_argument("manifest_file")
    c.set_defaults(func=cmd_replay)
    return p


def _add_global(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--threads", type=int, default=default, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p.add_argument("--manifest", default=default, help="write a JSON run manifest to this path")
    p.add_argument("--output", "-o", default=default, help="write primary output here instead of stdout")


def _versions() -> dict:
    v = {"idgraphs": __version__, "python": platform.python_version(), "numpy": np.__version__, "backend": kernels.BACKEND}
    try:
        import numba

        v["numba"] = numba.__version__
    except ImportError:
        pass
    return v


def run(argv: list[str], out) -> int:
    """Parse and execute; primary output goes to ``out``. Returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        if args.threads is None:
            args.threads = default_threads()
        return args.func(args, out)
    except UsageError as exc:
        print(f"idgraphs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, QueryError, OSError, UnicodeDecodeError) as exc:
        print(f"idgraphs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    buf = io.StringIO()
    t0 = time.perf_counter()
    code = run(argv, buf)
    wall = time.perf_counter() - t0
    text = buf.getvalue()
    try:
        parsed = build_parser().parse_known_args(argv)[0]
    except UsageError:
        parsed = None
    target = getattr(parsed, "output", None)
    if target:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    manifest = getattr(parsed, "manifest", None)
    if manifest:
        params = {k: v for k, v in vars(parsed).items() if k not in ("func", "manifest", "output")}
        record = {
            "command": parsed.command,
            "argv": [a for a in _strip_manifest_args(argv)],
            "parameters": params,
            "seed": params.get("seed"),
            "versions": _versions(),
            "wall_time_s": round(wall, 6),
            "exit_code": code,
            "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        }
        with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(record, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    return code


def _strip_manifest_args(argv: list[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--manifest", "--output", "-o"):
            skip = True
            continue
        if a.startswith("--manifest=") or a.startswith("--output="):
            continue
        out.append(a)
    return out


if __name__ == "__main__":
    sys.exit(main())
