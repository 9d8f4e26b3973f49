"""Command-line driver.

Subcommands: gen, sparsify, solve, probe, distsim, dynamic, bench.
CSV reports go to ``--out`` (or stdout); the exit status is non-zero iff a
checked bound failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from arbsparse import dynamic, experiments, local
from arbsparse.errors import ArbsparseError
from arbsparse.graph import (
    Graph,
    format_graph,
    generate_forest_union,
    generate_hub_forest_union,
    generate_random_graph,
    load_graph,
)
from arbsparse.solvers import (
    approx_matching_short_augment,
    format_solution,
    greedy_is_min_degree,
    greedy_maximal_matching,
    max_is_exact,
    max_matching_exact,
    min_vc_exact,
    verify_is,
    verify_matching,
    verify_vc,
)
from arbsparse.sparsify import (
    as_fraction,
    build_is_sparsifier,
    build_matching_sparsifier,
    build_vc_sparsifier,
    format_sparsifier,
    is_delta,
    matching_delta,
    vc_delta,
)

log = logging.getLogger("arbsparse")


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--graph", help="edge-list file")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=int, help="declared arboricity bound")
    p.add_argument("--beta", type=as_fraction, help="declared average-degree bound")
    p.add_argument("--eps", type=as_fraction, default=Fraction(1))
    p.add_argument("--t", type=as_fraction, default=Fraction(1), help="static solver approximation factor")
    p.add_argument("--delta-override", type=int, help="use this degree threshold instead of the formula")
    return p


def _need_graph(args) -> None:
    if not args.graph:
        raise SystemExit("error: --graph is required")


def cmd_gen(args) -> int:
    if args.kind == "forest":
        g = generate_forest_union(args.n, args.alpha or 1, args.seed)
    elif args.kind == "hub":
        g = generate_hub_forest_union(args.n, args.alpha or 1, args.seed, args.hub_bias)
    else:
        m = args.m if args.m is not None else int((args.beta or 2) * args.n / 2)
        g = generate_random_graph(args.n, m, args.seed)
    _write(format_graph(g), args.out)
    if args.updates:
        if args.kind != "forest":
            raise SystemExit("error: traces are generated over forest-union bases only")
        base, ops = dynamic.generate_trace(args.n, args.alpha or 1, args.updates, args.seed)
        assert base == g
        Path(args.trace_out or "trace.txt").write_text(dynamic.format_trace(ops))
    return 0


def _delta(args, problem: str) -> int:
    if args.delta_override:
        return args.delta_override
    if problem == "matching":
        return matching_delta(args.alpha or 1, args.eps)
    if problem == "vc":
        return vc_delta(args.alpha or 1, args.eps)
    if args.beta is None:
        raise SystemExit("error: --beta is required for the independent-set sparsifier")
    return is_delta(args.beta, args.eps)


def cmd_sparsify(args) -> int:
    _need_graph(args)
    g = load_graph(args.graph)
    delta = _delta(args, args.problem)
    builder = {"matching": build_matching_sparsifier, "vc": build_vc_sparsifier, "is": build_is_sparsifier}[args.problem]
    sp = builder(g, delta)
    _write(format_sparsifier(sp), args.out)
    print(f"# problem={args.problem} delta={delta} n={g.n} m={g.m}", file=sys.stderr)
    return 0


def cmd_solve(args) -> int:
    _need_graph(args)
    g = load_graph(args.graph)
    if args.problem == "matching":
        if args.method == "exact":
            sol = max_matching_exact(g)
        elif args.method == "approx":
            sol = approx_matching_short_augment(g, args.eps)
        else:
            sol = greedy_maximal_matching(g)
        ok = verify_matching(g, sol)
    elif args.problem == "vc":
        sol = min_vc_exact(g) if args.method == "exact" else dynamic.matching_vc(g)
        ok = verify_vc(g, sol)
    else:
        sol = max_is_exact(g) if args.method == "exact" else greedy_is_min_degree(g)
        ok = verify_is(g, sol)
    _write(format_solution(sol), args.out)
    print(f"# size={sol.size} valid={'true' if ok else 'false'}", file=sys.stderr)
    return 0 if ok else 1


def cmd_probe(args) -> int:
    _need_graph(args)
    g = load_graph(args.graph)
    delta = args.delta or _delta(args, "matching")
    oracle = local.SparsifierOracle(g, delta)
    adj = oracle.sparsifier_adjacency(args.vertex)
    stats = local.probe_stats(oracle)
    high = oracle.is_in_validating_set(args.vertex)
    print(f"vertex {args.vertex} delta {delta}")
    print("adjacency " + " ".join(map(str, adj)))
    print(f"distinct_vertices_probed {stats.distinct_vertices_probed}")
    print(f"slot_probes {stats.slot_probes}")
    print(f"high {'true' if high else 'false'}")
    return 0


def cmd_distsim(args) -> int:
    _need_graph(args)
    g = load_graph(args.graph)
    delta = args.delta or _delta(args, "matching")
    row, edges = experiments.distsim_row(g, delta, args.protocol)
    for k in ("rounds", "max_sent", "mean_sent", "max_received", "total_messages", "matches_centralized"):
        print(f"{k} {row[k]}")
    sub = Graph.from_edges(g.n, sorted(edges))
    if args.out:
        Path(args.out).write_text(format_graph(sub, [f"delta={delta}", f"protocol={args.protocol}"]))
    return 0 if row["pass"] == "true" else 1


def cmd_dynamic(args) -> int:
    cfg = experiments.ExperimentConfig(
        problem="dynamic-" + args.problem,
        graph=args.graph,
        n=args.n,
        alpha=args.alpha or 1,
        eps=args.eps,
        t=args.t,
        seed=args.seed,
        checkpoint_every=args.checkpoint_every,
        delta_override=args.delta_override,
        trace=args.trace,
        updates=args.updates,
    )
    rows = experiments.run_experiment(cfg)
    _write(experiments.to_csv(rows, experiments.COLUMNS[cfg.problem]), args.out)
    return 0 if experiments.all_passed(rows) else 1


def cmd_bench(args) -> int:
    rows = []
    eps_values = args.eps_sweep or [args.eps]
    densities = args.alphas if args.problem != "is" else args.betas
    for d in densities:
        for eps in eps_values:
            for t in (args.ts if args.problem == "vc" else [args.t]):
                kw = dict(alpha=int(d)) if args.problem != "is" else dict(beta=as_fraction(d))
                gen = args.generator if args.problem != "is" or args.generator != "forest" else "random"
                if args.problem == "is" and eps >= as_fraction(d):
                    continue
                cfg = experiments.ExperimentConfig(
                    problem=args.problem, graph=args.graph, generator=gen, n=args.n, eps=eps, t=t,
                    seed=args.seed, seeds=args.seeds, delta_override=args.delta_override, **kw,
                )
                rows.extend(experiments.run_experiment(cfg))
    if args.summary:
        text = experiments.to_csv(experiments.summarize(rows), experiments.SUMMARY_COLUMNS)
    else:
        text = experiments.to_csv(rows, experiments.COLUMNS[args.problem])
    _write(text, args.out)
    return 0 if experiments.all_passed(rows) else 1


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(prog="arbsparse", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a graph (and optionally an update trace)")
    g.add_argument("--kind", choices=("forest", "hub", "random"), default="forest")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--hub-bias", type=float, default=0.5)
    g.add_argument("--updates", type=int, default=0, help="also write a trace of this many updates")
    g.add_argument("--trace-out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("sparsify", parents=[common], help="build a sparsifier")
    s.add_argument("--problem", choices=("matching", "vc", "is"), required=True)
    s.set_defaults(func=cmd_sparsify)

    so = sub.add_parser("solve", parents=[common], help="solve on a graph file")
    so.add_argument("--problem", choices=("matching", "vc", "is"), required=True)
    so.add_argument("--method", choices=("exact", "greedy", "approx"), default="exact")
    so.set_defaults(func=cmd_solve)

    pr = sub.add_parser("probe", parents=[common], help="local sparsifier adjacency with probe counts")
    pr.add_argument("--delta", type=int)
    pr.add_argument("--vertex", type=int, required=True)
    pr.set_defaults(func=cmd_probe)

    d = sub.add_parser("distsim", parents=[common], help="one-round distributed construction")
    d.add_argument("--delta", type=int)
    d.add_argument("--protocol", choices=("matching", "highlow"), default="matching")
    d.set_defaults(func=cmd_distsim)

    dy = sub.add_parser("dynamic", parents=[common], help="replay an update trace through the lazy scheme")
    dy.add_argument("--problem", choices=("vc", "is"), default="vc")
    dy.add_argument("--trace", help="'+ u v' / '- u v' per line; generated when omitted")
    dy.add_argument("--n", type=int, default=200, help="vertex count when no --graph is given")
    dy.add_argument("--updates", type=int, default=1000, help="length of a generated trace")
    dy.add_argument("--checkpoint-every", type=int, default=100)
    dy.set_defaults(func=cmd_dynamic)

    b = sub.add_parser("bench", parents=[common], help="seed sweep of measured ratios against bounds")
    b.add_argument("problem", choices=("matching", "vc", "is"))
    b.add_argument("--generator", choices=("forest", "hub", "random"), default="forest")
    b.add_argument("--n", type=int, default=60)
    b.add_argument("--seeds", type=int, default=10)
    b.add_argument("--alphas", type=int, nargs="+", default=[1, 2, 3])
    b.add_argument("--betas", type=as_fraction, nargs="+", default=[Fraction(1), Fraction(2), Fraction(3)])
    b.add_argument("--eps-sweep", type=as_fraction, nargs="+", default=[Fraction(1), Fraction(1, 2), Fraction(1, 3)])
    b.add_argument("--ts", type=as_fraction, nargs="+", default=[Fraction(1), Fraction(2)])
    b.add_argument("--summary", action="store_true", help="emit the per-cell aggregate instead of raw rows")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ArbsparseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
