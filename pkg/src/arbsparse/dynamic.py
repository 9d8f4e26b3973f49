"""Fully dynamic graphs and lazily rebuilt vertex covers / independent sets.

The lazy scheme keeps a solution valid with O(1) patches per update and
recomputes it from scratch once per epoch. For vertex cover the recompute
only touches the old cover: every edge with both endpoints of degree below
``delta`` has an endpoint in the old cover, so scanning the low-degree cover
vertices rebuilds G[low] completely. The new cover is a static cover of
G[low] plus every high vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from arbsparse.errors import InputError, ParseError
from arbsparse.graph import Graph, forest_union_with_owners
from arbsparse.solvers import (
    IndependentSet,
    VertexCover,
    greedy_is_min_degree,
    greedy_maximal_matching,
    max_is_exact,
    min_vc_exact,
    vc_from_matching,
)
from arbsparse.sparsify import Rational, as_fraction, vc_delta

INSERT = "+"
DELETE = "-"


class DynamicGraph:
    """Mutable simple graph with per-vertex degree counters."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.degree = [0] * n
        self.m = 0
        self.update_counter = 0
        self._listeners: list[Callable[[int], None]] = []
        for u, v in edges:
            self._add(int(u), int(v))

    @classmethod
    def from_graph(cls, g: Graph) -> "DynamicGraph":
        return cls(g.n, g.edges())

    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"vertex out of range in ({u}, {v})")
        if u == v:
            raise InputError("self-loop")

    def _add(self, u: int, v: int) -> None:
        self._check(u, v)
        if v in self.adj[u]:
            raise InputError(f"edge ({u}, {v}) already present")
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.degree[u] += 1
        self.degree[v] += 1
        self.m += 1

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def insert_edge(self, u: int, v: int) -> None:
        self._add(u, v)
        self.update_counter += 1
        for cb in self._listeners:
            cb(u)
            cb(v)

    def delete_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v not in self.adj[u]:
            raise InputError(f"edge ({u}, {v}) not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.degree[u] -= 1
        self.degree[v] -= 1
        self.m -= 1
        self.update_counter += 1
        for cb in self._listeners:
            cb(u)
            cb(v)

    def apply(self, op: str, u: int, v: int) -> None:
        if op == INSERT:
            self.insert_edge(u, v)
        elif op == DELETE:
            self.delete_edge(u, v)
        else:
            raise InputError(f"unknown update op {op!r}")

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def snapshot(self) -> Graph:
        return Graph.from_edges(self.n, self.edges())


def insert_edge(dg: DynamicGraph, u: int, v: int) -> None:
    dg.insert_edge(u, v)


def delete_edge(dg: DynamicGraph, u: int, v: int) -> None:
    dg.delete_edge(u, v)


class HighLowTracker:
    """Keeps ``membership[v] == (degree[v] >= delta)`` under updates."""

    def __init__(self, dg: DynamicGraph, delta: int):
        if delta < 1:
            raise InputError("delta must be >= 1")
        self.dg = dg
        self.delta = delta
        self.membership = [d >= delta for d in dg.degree]
        self.high = {v for v in range(dg.n) if self.membership[v]}
        self.flips = 0
        dg._listeners.append(self._touch)

    def _touch(self, v: int) -> None:
        now = self.dg.degree[v] >= self.delta
        if now != self.membership[v]:
            self.membership[v] = now
            self.flips += 1
            if now:
                self.high.add(v)
            else:
                self.high.discard(v)

    def is_high(self, v: int) -> bool:
        return self.membership[v]


# --------------------------------------------------------------------------
# static solvers usable inside the lazy schemes

VcSolver = Callable[[Graph], VertexCover]
IsSolver = Callable[[Graph], IndependentSet]


def matching_vc(g: Graph) -> VertexCover:
    """2-approximate cover: both endpoints of a greedy maximal matching."""
    return vc_from_matching(greedy_maximal_matching(g))


def default_vc_solver(t: Rational) -> VcSolver:
    t = as_fraction(t)
    if t == 1:
        return min_vc_exact
    if t == 2:
        return matching_vc
    raise InputError("static vertex cover solvers exist for t=1 (exact) and t=2 (maximal matching)")


def default_is_solver(t: Rational) -> IsSolver:
    t = as_fraction(t)
    if t == 1:
        return max_is_exact
    return greedy_is_min_degree


def _compact(n: int, edges: list[tuple[int, int]]) -> tuple[Graph, np.ndarray]:
    labels = np.unique(np.asarray(edges, dtype=np.int64).ravel()) if edges else np.zeros(0, np.int64)
    local = {int(v): i for i, v in enumerate(labels)}
    return Graph.from_edges(labels.size, [(local[u], local[v]) for u, v in edges]), labels


@dataclass(frozen=True)
class RebuildRecord:
    update_index: int
    scan_size: int
    low_edges: int
    cover_before: int
    cover_after: int
    epoch_length: int
    changes: int


@dataclass(frozen=True)
class UpdateStats:
    updates: int
    rebuild_count: int
    changes_log: int
    amortized_changes: Fraction
    max_update_work: int
    max_cover: int
    min_epoch_length: int


@dataclass
class LazyVcState:
    dg: DynamicGraph
    t: Fraction
    eps: Fraction
    delta: int
    solver: VcSolver
    tracker: HighLowTracker
    in_cover: list[bool]
    cover_size: int = 0
    epoch_remaining: int = 0
    epoch_length: int = 0
    rebuild_count: int = 0
    changes_log: int = 0
    updates: int = 0
    max_update_work: int = 0
    max_cover: int = 0
    rebuilds: list[RebuildRecord] = field(default_factory=list)
    epoch_lengths: list[int] = field(default_factory=list)

    @property
    def cover(self) -> VertexCover:
        return VertexCover(v for v, c in enumerate(self.in_cover) if c)

    def _set(self, v: int, flag: bool) -> None:
        if self.in_cover[v] != flag:
            self.in_cover[v] = flag
            self.cover_size += 1 if flag else -1

    def _start_epoch(self) -> None:
        self.epoch_length = math.floor(self.eps / 4 * self.cover_size)
        self.epoch_remaining = self.epoch_length
        self.epoch_lengths.append(self.epoch_length)
        self.max_cover = max(self.max_cover, self.cover_size)

    def rebuild(self) -> list[tuple[int, int]]:
        """Recompute the cover from G[low] discovered through the old cover."""
        dg, delta = self.dg, self.delta
        scan = 0
        low_edges = []
        for v in range(dg.n):
            if not self.in_cover[v] or dg.degree[v] >= delta:
                continue
            for u in dg.adj[v]:
                scan += 1
                if dg.degree[u] < delta:
                    low_edges.append((min(u, v), max(u, v)))
        low_edges = sorted(set(low_edges))
        sub, labels = _compact(dg.n, low_edges)
        low_cover = {int(labels[i]) for i in self.solver(sub).vertices} if sub.n else set()
        new = low_cover | self.tracker.high
        before = self.cover_size
        changes = []
        for v in range(dg.n):
            want = v in new
            if want != self.in_cover[v]:
                changes.append((v, 1 if want else -1))
                self._set(v, want)
        self.rebuild_count += 1
        self.changes_log += len(changes)
        self.max_update_work = max(self.max_update_work, scan + len(low_edges))
        self._start_epoch()
        self.rebuilds.append(
            RebuildRecord(self.updates, scan, len(low_edges), before, self.cover_size, self.epoch_length, len(changes))
        )
        return changes

    def apply(self, op: str, u: int, v: int) -> list[tuple[int, int]]:
        """Apply the update to the graph, then patch the cover."""
        self.dg.apply(op, u, v)
        return lazy_vc_update(self, op, u, v)


def lazy_vc_init(
    dg: DynamicGraph,
    t: Rational,
    eps: Rational,
    alpha: int,
    static_solver: Optional[VcSolver] = None,
    delta: Optional[int] = None,
) -> LazyVcState:
    t = as_fraction(t)
    eps = as_fraction(eps)
    if delta is None:
        delta = vc_delta(alpha, eps)
    solver = static_solver or default_vc_solver(t)
    tracker = HighLowTracker(dg, delta)
    low = [v for v in range(dg.n) if not tracker.membership[v]]
    is_low = np.zeros(dg.n, bool)
    is_low[low] = True
    low_edges = [(u, v) for u, v in dg.edges() if is_low[u] and is_low[v]]
    sub, labels = _compact(dg.n, low_edges)
    low_cover = {int(labels[i]) for i in solver(sub).vertices} if sub.n else set()
    state = LazyVcState(dg, t, eps, delta, solver, tracker, [False] * dg.n)
    for v in low_cover | tracker.high:
        state._set(v, True)
    state._start_epoch()
    return state


def lazy_vc_update(state: LazyVcState, op: str, u: int, v: int) -> list[tuple[int, int]]:
    """Patch the cover after ``op`` (already applied to the graph).

    An insert between two uncovered vertices adds the endpoint of higher
    degree (lower id on ties); deletions never shrink the cover. Each update
    consumes one step of the epoch, and an exhausted epoch triggers a rebuild.
    """
    state.updates += 1
    changes: list[tuple[int, int]] = []
    if op == INSERT and not state.in_cover[u] and not state.in_cover[v]:
        du, dv = state.dg.degree[u], state.dg.degree[v]
        w = u if (du, -u) > (dv, -v) else v
        state._set(w, True)
        changes.append((w, 1))
        state.changes_log += 1
    if state.epoch_remaining > 0:
        state.epoch_remaining -= 1
    state.max_update_work = max(state.max_update_work, 1)
    if state.epoch_remaining == 0:
        changes.extend(state.rebuild())
    state.max_cover = max(state.max_cover, state.cover_size)
    return changes


def query_in_cover(state: LazyVcState, v: int) -> bool:
    return state.in_cover[v]


# --------------------------------------------------------------------------
# independent set


@dataclass
class LazyIsState:
    dg: DynamicGraph
    t: Fraction
    eps: Fraction
    solver: IsSolver
    in_set: list[bool]
    set_size: int = 0
    epoch_remaining: int = 0
    epoch_length: int = 0
    rebuild_count: int = 0
    changes_log: int = 0
    updates: int = 0
    max_update_work: int = 0
    max_set: int = 0
    epoch_lengths: list[int] = field(default_factory=list)

    @property
    def iset(self) -> IndependentSet:
        return IndependentSet(v for v, c in enumerate(self.in_set) if c)

    def _set(self, v: int, flag: bool) -> None:
        if self.in_set[v] != flag:
            self.in_set[v] = flag
            self.set_size += 1 if flag else -1

    def rebuild(self) -> list[tuple[int, int]]:
        g = self.dg.snapshot()
        new = self.solver(g).vertices
        changes = []
        for v in range(self.dg.n):
            want = v in new
            if want != self.in_set[v]:
                changes.append((v, 1 if want else -1))
                self._set(v, want)
        self.rebuild_count += 1
        self.changes_log += len(changes)
        self.max_update_work = max(self.max_update_work, g.n + g.m)
        beta_hat = Fraction(2 * self.dg.m, self.dg.n) if self.dg.n else Fraction(0)
        self.epoch_length = math.floor(self.eps / 4 * self.dg.n / (beta_hat + 1))
        self.epoch_remaining = self.epoch_length
        self.epoch_lengths.append(self.epoch_length)
        self.max_set = max(self.max_set, self.set_size)
        return changes

    def apply(self, op: str, u: int, v: int) -> list[tuple[int, int]]:
        self.dg.apply(op, u, v)
        return lazy_is_update(self, op, u, v)


def lazy_is_init(dg: DynamicGraph, t: Rational, eps: Rational, static_solver: Optional[IsSolver] = None) -> LazyIsState:
    t = as_fraction(t)
    state = LazyIsState(dg, t, as_fraction(eps), static_solver or default_is_solver(t), [False] * dg.n)
    state.rebuild()
    state.rebuild_count = 0
    state.changes_log = 0
    return state


def lazy_is_update(state: LazyIsState, op: str, u: int, v: int) -> list[tuple[int, int]]:
    """Evict the higher-degree endpoint (lower id on ties) when an insert
    joins two members; recompute on the whole graph when the epoch runs out."""
    state.updates += 1
    changes: list[tuple[int, int]] = []
    if op == INSERT and state.in_set[u] and state.in_set[v]:
        du, dv = state.dg.degree[u], state.dg.degree[v]
        w = u if (du, -u) > (dv, -v) else v
        state._set(w, False)
        changes.append((w, -1))
        state.changes_log += 1
    if state.epoch_remaining > 0:
        state.epoch_remaining -= 1
    state.max_update_work = max(state.max_update_work, 1)
    if state.epoch_remaining == 0:
        changes.extend(state.rebuild())
    return changes


def update_stats(state) -> UpdateStats:
    updates = state.updates
    amortized = Fraction(state.changes_log, updates) if updates else Fraction(0)
    biggest = state.max_cover if isinstance(state, LazyVcState) else state.max_set
    lengths = state.epoch_lengths or [0]
    return UpdateStats(
        updates, state.rebuild_count, state.changes_log, amortized, state.max_update_work, biggest, min(lengths)
    )


# --------------------------------------------------------------------------
# traces


def generate_trace(
    n: int, alpha: int, updates: int, seed: int, insert_prob: float = 0.5
) -> tuple[Graph, list[tuple[str, int, int]]]:
    """Forest-union base graph plus a random update sequence that keeps the
    edge set a union of ``alpha`` forests (so arboricity stays <= alpha)."""
    base, owner = forest_union_with_owners(n, alpha, seed)
    rng = np.random.default_rng([seed, 0x7A11])
    forests = [[set() for _ in range(n)] for _ in range(alpha)]
    edge_list: list[tuple[int, int]] = []
    where: dict[tuple[int, int], int] = {}
    for (u, v), k in sorted(owner.items()):
        forests[k][u].add(v)
        forests[k][v].add(u)
        where[(u, v)] = len(edge_list)
        edge_list.append((u, v))
    edge_owner = dict(owner)

    def connected(k: int, a: int, b: int) -> bool:
        seen = {a}
        stack = [a]
        adj = forests[k]
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    ops: list[tuple[str, int, int]] = []
    while len(ops) < updates:
        want_insert = rng.random() < insert_prob or not edge_list
        done = False
        if want_insert and n >= 2:
            for _ in range(50):
                k = int(rng.integers(alpha))
                a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
                key = (min(a, b), max(a, b))
                if key in where or connected(k, a, b):
                    continue
                forests[k][a].add(b)
                forests[k][b].add(a)
                where[key] = len(edge_list)
                edge_list.append(key)
                edge_owner[key] = k
                ops.append((INSERT, key[0], key[1]))
                done = True
                break
        if not done and edge_list:
            i = int(rng.integers(len(edge_list)))
            key = edge_list[i]
            last = edge_list.pop()
            if last != key:
                edge_list[i] = last
                where[last] = i
            del where[key]
            k = edge_owner.pop(key)
            forests[k][key[0]].discard(key[1])
            forests[k][key[1]].discard(key[0])
            ops.append((DELETE, key[0], key[1]))
        elif not done:
            raise InputError("cannot generate updates on a graph with fewer than 2 vertices")
    return base, ops


def format_trace(ops: Iterable[tuple[str, int, int]]) -> str:
    return "".join(f"{op} {u} {v}\n" for op, u, v in ops)


def parse_trace(text: str) -> list[tuple[str, int, int]]:
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in (INSERT, DELETE):
            raise ParseError(f"expected '+ u v' or '- u v', got {line!r}", lineno)
        try:
            ops.append((parts[0], int(parts[1]), int(parts[2])))
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
    return ops


def load_trace(path: str | Path) -> list[tuple[str, int, int]]:
    return parse_trace(Path(path).read_text())
