"""Experiment runner: measured approximation ratios against their proven bounds.

Every problem produces a list of CSV rows (dicts with a fixed column order).
Rows that check a bound carry ``bound`` and ``pass`` columns; ``pass`` is
``"n/a"`` when an exact oracle refused the instance.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from arbsparse import distsim, dynamic, local
from arbsparse.errors import CapabilityError, InputError
from arbsparse.graph import (
    Graph,
    generate_forest_union,
    generate_hub_forest_union,
    generate_random_graph,
    load_graph,
)
from arbsparse.solvers import (
    assemble_vc,
    max_is_exact,
    max_matching_exact,
    min_vc_exact,
    verify_is,
    verify_vc,
)
from arbsparse.sparsify import (
    as_fraction,
    build_is_sparsifier,
    build_matching_sparsifier,
    build_vc_sparsifier,
    is_delta,
    matching_delta,
    vc_delta,
)

log = logging.getLogger(__name__)

PROBLEMS = ("matching", "vc", "is", "dynamic-vc", "dynamic-is", "distsim", "probe")
GENERATORS = ("forest", "hub", "random")

COLUMNS = {
    "matching": ["n", "m", "alpha", "eps", "delta", "exact_g", "exact_gdelta", "ratio", "bound", "max_deg_gdelta", "pass"],
    "vc": ["n", "m", "alpha", "eps", "t", "delta", "high", "exact_g", "cover", "ratio", "bound", "pass"],
    "is": ["n", "m", "beta", "eps", "delta", "low", "exact_g", "exact_glow", "ratio", "bound", "pass"],
    "dynamic-vc": ["update", "op", "u", "v", "cover_size", "exact_opt", "ratio", "bound", "rebuild", "changes", "pass"],
    "dynamic-is": ["update", "op", "u", "v", "set_size", "exact_opt", "ratio", "bound", "rebuild", "changes", "pass"],
    "distsim": ["n", "m", "delta", "protocol", "rounds", "max_sent", "mean_sent", "max_received", "total_messages", "matches_centralized", "pass"],
    "probe": ["vertex", "delta", "sparsifier_degree", "distinct_vertices", "slot_probes", "consistent", "pass"],
}


@dataclass
class ExperimentConfig:
    problem: str
    graph: Optional[str] = None
    generator: str = "forest"
    n: int = 60
    m: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[Fraction] = None
    eps: Fraction = Fraction(1)
    t: Fraction = Fraction(1)
    seed: int = 0
    seeds: int = 1
    checkpoint_every: int = 100
    delta_override: Optional[int] = None
    trace: Optional[str] = None
    updates: int = 1000
    protocol: str = "matching"
    vertices: Optional[Sequence[int]] = None
    hub_bias: float = 0.5

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise InputError(f"unknown problem {self.problem!r}; expected one of {', '.join(PROBLEMS)}")
        if self.generator not in GENERATORS:
            raise InputError(f"unknown generator {self.generator!r}")
        self.eps = as_fraction(self.eps)
        self.t = as_fraction(self.t)
        if self.beta is not None:
            self.beta = as_fraction(self.beta)
        if self.generator == "random" and self.graph is None:
            if self.m is None and self.beta is not None:
                self.m = int(self.beta * self.n / 2)
            if self.m is None:
                raise InputError("random generator needs m or beta")
            declared = Fraction(2 * self.m, self.n)
            if self.beta is None:
                self.beta = declared
            elif self.beta < declared:
                raise InputError(f"declared beta={self.beta} below the generated average degree {declared}")
        if self.generator in ("forest", "hub") and self.alpha is None and self.problem in ("matching", "vc", "dynamic-vc"):
            self.alpha = 1


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else f"{float(x):.6f}"
    if isinstance(x, float):
        return f"{x:.6f}"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _ratio_cell(r) -> str:
    return f"{float(r):.6f}" if r is not None else ""


def make_graph(cfg: ExperimentConfig, seed: int) -> Graph:
    if cfg.graph is not None:
        return load_graph(cfg.graph)
    if cfg.generator == "forest":
        return generate_forest_union(cfg.n, cfg.alpha or 1, seed)
    if cfg.generator == "hub":
        return generate_hub_forest_union(cfg.n, cfg.alpha or 1, seed, cfg.hub_bias)
    return generate_random_graph(cfg.n, cfg.m, seed)


def _seeds(cfg: ExperimentConfig) -> list[int]:
    return [cfg.seed] if cfg.graph is not None else list(range(cfg.seed, cfg.seed + cfg.seeds))


# --------------------------------------------------------------------------
# static sparsifier checks


def matching_row(g: Graph, alpha: int, eps: Fraction, delta: Optional[int] = None) -> dict:
    delta = delta or matching_delta(alpha, eps)
    sp = build_matching_sparsifier(g, delta)
    row = {"n": g.n, "m": g.m, "alpha": alpha, "eps": _fmt(eps), "delta": delta, "max_deg_gdelta": sp.graph.max_degree()}
    bound = 1 + eps
    row["bound"] = _fmt(bound)
    try:
        a = max_matching_exact(g).size
        b = max_matching_exact(sp.graph).size
    except CapabilityError as exc:
        log.warning("matching oracle refused n=%d: %s", g.n, exc)
        row.update(exact_g="", exact_gdelta="", ratio="", **{"pass": "n/a"})
        return row
    ratio = Fraction(a, b) if b else (Fraction(1) if a == 0 else None)
    ok = ratio is not None and ratio <= bound and row["max_deg_gdelta"] <= delta
    row.update(exact_g=a, exact_gdelta=b, ratio=_ratio_cell(ratio) if ratio is not None else "inf", **{"pass": _fmt(ok)})
    return row


def vc_row(g: Graph, alpha: int, eps: Fraction, t: Fraction, delta: Optional[int] = None) -> dict:
    delta = delta or vc_delta(alpha, eps)
    sp = build_vc_sparsifier(g, delta)
    solver = dynamic.default_vc_solver(t)
    row = {"n": g.n, "m": g.m, "alpha": alpha, "eps": _fmt(eps), "t": _fmt(t), "delta": delta, "high": len(sp.validating_set)}
    bound = t + eps
    row["bound"] = _fmt(bound)
    try:
        low_cover = solver(sp.g_low.graph)
        lifted = type(low_cover)(sp.g_low.lift(low_cover.vertices)) if low_cover.size else low_cover
        cover = assemble_vc(lifted, sp.split)
        opt = min_vc_exact(g).size
    except CapabilityError as exc:
        log.warning("vertex cover oracle refused n=%d: %s", g.n, exc)
        row.update(exact_g="", cover="", ratio="", **{"pass": "n/a"})
        return row
    ratio = Fraction(cover.size, opt) if opt else Fraction(1 if cover.size == 0 else 0)
    ok = verify_vc(g, cover) and (cover.size <= bound * opt)
    row.update(exact_g=opt, cover=cover.size, ratio=_ratio_cell(ratio), **{"pass": _fmt(ok)})
    return row


def is_row(g: Graph, beta: Fraction, eps: Fraction, delta: Optional[int] = None) -> dict:
    delta = delta or is_delta(beta, eps)
    sp = build_is_sparsifier(g, delta)
    row = {"n": g.n, "m": g.m, "beta": _fmt(beta), "eps": _fmt(eps), "delta": delta, "low": sp.g_low.graph.n}
    bound = 1 + eps
    row["bound"] = _fmt(bound)
    try:
        opt = max_is_exact(g).size
        low = max_is_exact(sp.g_low.graph)
    except CapabilityError as exc:
        log.warning("independent set oracle refused n=%d: %s", g.n, exc)
        row.update(exact_g="", exact_glow="", ratio="", **{"pass": "n/a"})
        return row
    lifted = sp.g_low.lift(low.vertices) if low.size else []
    ratio = Fraction(opt, low.size) if low.size else (Fraction(1) if opt == 0 else None)
    ok = verify_is(g, lifted) and ratio is not None and opt <= bound * low.size
    row.update(exact_g=opt, exact_glow=low.size, ratio=_ratio_cell(ratio) if ratio is not None else "inf", **{"pass": _fmt(ok)})
    return row


# --------------------------------------------------------------------------
# dynamic replays


def replay_vc(
    base: Graph,
    ops: Sequence[tuple[str, int, int]],
    alpha: int,
    t: Fraction,
    eps: Fraction,
    checkpoint_every: int = 100,
    check_validity: bool = True,
    delta: Optional[int] = None,
) -> tuple[list[dict], dynamic.LazyVcState]:
    """Replay a trace through the lazy VC scheme.

    One row per update; rows at multiples of ``checkpoint_every`` carry the
    exact optimum and the ratio against ``t + 2 eps``.
    """
    dg = dynamic.DynamicGraph.from_graph(base)
    state = dynamic.lazy_vc_init(dg, t, eps, alpha, delta=delta)
    bound = t + 2 * eps
    rows = []
    for i, (op, u, v) in enumerate(ops, start=1):
        before = state.rebuild_count
        changes = state.apply(op, u, v)
        row = {"update": i, "op": op, "u": u, "v": v, "cover_size": state.cover_size, "exact_opt": "", "ratio": "",
               "bound": "", "rebuild": _fmt(state.rebuild_count > before), "changes": len(changes), "pass": ""}
        ok = True
        if check_validity:
            cov = state.in_cover
            for a in range(dg.n):
                if not cov[a]:
                    for b in dg.adj[a]:
                        if not cov[b]:
                            ok = False
                            break
                if not ok:
                    break
        if checkpoint_every and i % checkpoint_every == 0:
            snap = dg.snapshot()
            row["bound"] = _fmt(bound)
            try:
                opt = min_vc_exact(snap).size
                ratio = Fraction(state.cover_size, opt) if opt else Fraction(1 if state.cover_size == 0 else 0)
                row.update(exact_opt=opt, ratio=_ratio_cell(ratio))
                ok = ok and state.cover_size <= bound * opt
            except CapabilityError as exc:
                log.warning("checkpoint %d: %s", i, exc)
        row["pass"] = _fmt(ok)
        rows.append(row)
    return rows, state


def replay_is(
    base: Graph,
    ops: Sequence[tuple[str, int, int]],
    t: Fraction,
    eps: Fraction,
    checkpoint_every: int = 100,
) -> tuple[list[dict], dynamic.LazyIsState]:
    dg = dynamic.DynamicGraph.from_graph(base)
    state = dynamic.lazy_is_init(dg, t, eps)
    bound = t * (1 + 2 * eps)
    rows = []
    for i, (op, u, v) in enumerate(ops, start=1):
        before = state.rebuild_count
        changes = state.apply(op, u, v)
        ins = state.in_set
        ok = not any(ins[a] and ins[b] for a in range(dg.n) for b in dg.adj[a])
        row = {"update": i, "op": op, "u": u, "v": v, "set_size": state.set_size, "exact_opt": "", "ratio": "",
               "bound": "", "rebuild": _fmt(state.rebuild_count > before), "changes": len(changes), "pass": ""}
        if checkpoint_every and i % checkpoint_every == 0:
            row["bound"] = _fmt(bound)
            try:
                opt = max_is_exact(dg.snapshot()).size
                ratio = Fraction(opt, state.set_size) if state.set_size else None
                row.update(exact_opt=opt, ratio=_ratio_cell(ratio) if ratio is not None else "inf")
                ok = ok and opt <= bound * state.set_size
            except CapabilityError as exc:
                log.warning("checkpoint %d: %s", i, exc)
        row["pass"] = _fmt(ok)
        rows.append(row)
    return rows, state


# --------------------------------------------------------------------------
# distributed / local


def distsim_row(g: Graph, delta: int, protocol: str) -> tuple[dict, set]:
    if protocol == "matching":
        edges, rlog = distsim.run_one_round_matching_sparsifier(g, delta)
        central = build_matching_sparsifier(g, delta).graph.edge_set()
        same = edges == central
        ok = same and rlog.rounds == 1 and bool(np.all(rlog.sent <= delta))
    elif protocol == "highlow":
        knowledge, rlog = distsim.run_one_round_high_low(g, delta)
        edges = distsim.low_edges_from_knowledge(g, delta, knowledge)
        sp = build_is_sparsifier(g, delta)
        central = {(int(sp.g_low.labels[u]), int(sp.g_low.labels[v])) for u, v in sp.g_low.graph.edges()}
        same = edges == central
        ok = same and rlog.rounds == 1
    else:
        raise InputError(f"unknown protocol {protocol!r}")
    rep = distsim.load_report(rlog)
    row = {"n": g.n, "m": g.m, "delta": delta, "protocol": protocol, "rounds": rep["rounds"], "max_sent": rep["max_sent"],
           "mean_sent": _fmt(rep["mean_sent"]), "max_received": rep["max_received"],
           "total_messages": rep["total_messages"], "matches_centralized": _fmt(same), "pass": _fmt(ok)}
    return row, edges


def probe_rows(g: Graph, delta: int, vertices: Optional[Iterable[int]] = None) -> list[dict]:
    oracle = local.SparsifierOracle(g, delta)
    central = build_matching_sparsifier(g, delta).graph
    rows = []
    for v in (range(g.n) if vertices is None else vertices):
        adj = oracle.sparsifier_adjacency(v)
        stats = local.probe_stats(oracle)
        consistent = adj == [int(x) for x in central.adjacency(v)]
        ok = consistent and stats.distinct_vertices_probed <= delta + 1
        rows.append({"vertex": v, "delta": delta, "sparsifier_degree": len(adj),
                     "distinct_vertices": stats.distinct_vertices_probed, "slot_probes": stats.slot_probes,
                     "consistent": _fmt(consistent), "pass": _fmt(ok)})
    return rows


# --------------------------------------------------------------------------


def run_experiment(cfg: ExperimentConfig) -> list[dict]:
    """Rows for ``cfg``, ordered deterministically by seed then update/vertex."""
    rows: list[dict] = []
    if cfg.problem in ("matching", "vc", "is"):
        for seed in _seeds(cfg):
            g = make_graph(cfg, seed)
            if cfg.problem == "matching":
                rows.append(matching_row(g, cfg.alpha or 1, cfg.eps, cfg.delta_override))
            elif cfg.problem == "vc":
                rows.append(vc_row(g, cfg.alpha or 1, cfg.eps, cfg.t, cfg.delta_override))
            else:
                beta = cfg.beta if cfg.beta is not None else max(Fraction(1), Fraction(2 * g.m, max(g.n, 1)))
                rows.append(is_row(g, beta, cfg.eps, cfg.delta_override))
        return rows
    if cfg.problem in ("dynamic-vc", "dynamic-is"):
        if cfg.trace is not None:
            ops = dynamic.load_trace(cfg.trace)
            base = load_graph(cfg.graph) if cfg.graph else Graph.empty(cfg.n)
        else:
            base, ops = dynamic.generate_trace(cfg.n, cfg.alpha or 1, cfg.updates, cfg.seed)
        if cfg.problem == "dynamic-vc":
            return replay_vc(base, ops, cfg.alpha or 1, cfg.t, cfg.eps, cfg.checkpoint_every, delta=cfg.delta_override)[0]
        return replay_is(base, ops, cfg.t, cfg.eps, cfg.checkpoint_every)[0]
    g = make_graph(cfg, cfg.seed)
    delta = cfg.delta_override or matching_delta(cfg.alpha or 1, cfg.eps)
    if cfg.problem == "distsim":
        return [distsim_row(g, delta, cfg.protocol)[0]]
    return probe_rows(g, delta, cfg.vertices)


def all_passed(rows: Iterable[dict]) -> bool:
    return all(r.get("pass") != "false" for r in rows)


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


SUMMARY_KEYS = ("n", "alpha", "beta", "eps", "t", "delta")
SUMMARY_COLUMNS = list(SUMMARY_KEYS) + ["rows", "max_ratio", "mean_ratio", "bound", "failures", "pass"]


def _sort_key(cell: str) -> tuple:
    try:
        return (0, float(cell), cell)
    except ValueError:
        return (1, 0.0, cell)


def summarize(reports: Iterable[dict]) -> list[dict]:
    """Aggregate rows per configuration cell: max / mean ratio, failure count."""
    cells: dict[tuple, list[dict]] = {}
    for r in reports:
        key = tuple(str(r.get(k, "")) for k in SUMMARY_KEYS)
        cells.setdefault(key, []).append(r)
    out = []
    for key in sorted(cells, key=lambda k: tuple(_sort_key(x) for x in k)):
        group = cells[key]
        ratios = [float(r["ratio"]) for r in group if r.get("ratio") not in ("", None, "inf")]
        failures = sum(1 for r in group if r.get("pass") == "false")
        row = dict(zip(SUMMARY_KEYS, key))
        row.update(
            rows=len(group),
            max_ratio=f"{max(ratios):.6f}" if ratios else "",
            mean_ratio=f"{sum(ratios) / len(ratios):.6f}" if ratios else "",
            bound=group[0].get("bound", ""),
            failures=failures,
            **{"pass": _fmt(failures == 0)},
        )
        out.append(row)
    return out
