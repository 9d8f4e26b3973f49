"""Immutable simple graphs with a slot-indexed adjacency oracle.

Adjacency is stored in CSR form. Each vertex's neighbor list is sorted
ascending at construction, and that order is the slot order used by every
downstream construction (marking, probing, tie-breaking).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from arbsparse import kernels
from arbsparse.errors import CapabilityError, InputError, ParseError

EXACT_ARBORICITY_MAX_N = 16


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    The arrays are read-only; nothing mutates a Graph after construction.
    """

    __slots__ = ("indptr", "indices", "_edges")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        indptr.flags.writeable = False
        indices.flags.writeable = False
        self.indptr = indptr
        self.indices = indices
        self._edges: Optional[np.ndarray] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build from an edge iterable; rejects self-loops and duplicates."""
        if n < 0:
            raise InputError("vertex count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InputError("edges must be pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise InputError("edge endpoint out of range")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise InputError("self-loop")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keys = lo * max(n, 1) + hi
        if np.unique(keys).size != keys.size:
            raise InputError("duplicate edge")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src = src[order]
        dst = dst[order]
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros(n + 1, np.int64), np.zeros(0, np.int64))

    @property
    def n(self) -> int:
        return self.indptr.size - 1

    @property
    def m(self) -> int:
        return self.indices.size // 2

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range [0, {self.n})")

    def degree(self, v: int) -> int:
        self._check(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def adjacency(self, v: int) -> np.ndarray:
        self._check(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def neighbor(self, v: int, i: int) -> Optional[int]:
        """The ``i``-th neighbor of ``v`` in slot order (0-based), or None."""
        self._check(v)
        if i < 0:
            raise InputError("slot index must be non-negative")
        lo = self.indptr[v]
        if lo + i < self.indptr[v + 1]:
            return int(self.indices[lo + i])
        return None

    def has_edge(self, u: int, v: int) -> bool:
        adj = self.adjacency(u)
        p = np.searchsorted(adj, v)
        return bool(p < adj.size and adj[p] == v)

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges ``u < v`` in lexicographic order."""
        if self._edges is None:
            src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
            keep = src < self.indices
            e = np.stack([src[keep], self.indices[keep]], axis=1)
            e.flags.writeable = False
            self._edges = e
        return self._edges

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges()}

    def edge_subgraph(self, keep_entries: np.ndarray) -> "Graph":
        """Subgraph on the same vertex set keeping flagged CSR entries.

        ``keep_entries`` must be symmetric (entry (u, v) kept iff (v, u) is).
        """
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        indptr = np.zeros(self.n + 1, np.int64)
        np.cumsum(np.bincount(src[keep_entries], minlength=self.n), out=indptr[1:])
        return Graph(indptr, self.indices[keep_entries])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.indptr, other.indptr) and np.array_equal(self.indices, other.indices)

    def __hash__(self) -> int:
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def neighbor(g: Graph, v: int, i: int) -> Optional[int]:
    return g.neighbor(v, i)


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph relabelled to ``0..k-1``; ``labels[i]`` is the host id."""

    graph: Graph
    labels: np.ndarray

    def lift(self, local: Iterable[int]) -> np.ndarray:
        return np.sort(self.labels[np.asarray(list(local), dtype=np.int64)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Subgraph:
    """G[vertices], preserving the host slot order restricted to the subset."""
    labels = np.unique(np.asarray(list(vertices), dtype=np.int64))
    member = np.zeros(g.n, bool)
    member[labels] = True
    local = np.full(g.n, -1, np.int64)
    local[labels] = np.arange(labels.size)
    e = g.edges()
    keep = member[e[:, 0]] & member[e[:, 1]]
    return Subgraph(Graph.from_edges(labels.size, local[e[keep]]), labels)


@dataclass(frozen=True)
class HighLowSplit:
    delta: int
    high: np.ndarray
    low: np.ndarray
    graph: Graph = field(repr=False)

    def is_high(self, v: int) -> bool:
        return self.graph.degree(v) >= self.delta

    def g_low(self) -> Subgraph:
        return induced_subgraph(self.graph, self.low)

    def g_high(self) -> Subgraph:
        return induced_subgraph(self.graph, self.high)


def split_high_low(g: Graph, delta: int) -> HighLowSplit:
    if delta < 1:
        raise InputError("delta must be >= 1")
    deg = g.degrees()
    high = np.flatnonzero(deg >= delta)
    low = np.flatnonzero(deg < delta)
    return HighLowSplit(int(delta), high, low, g)


# --------------------------------------------------------------------------
# generators


def _pruefer_tree(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform random labelled tree on n vertices."""
    if n < 2:
        return []
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, np.int64)
    np.add.at(degree, seq, 1)
    leaves = [int(v) for v in np.flatnonzero(degree == 1)]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        x = int(x)
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _hub_tree(n: int, rng: np.random.Generator, hub_bias: float) -> list[tuple[int, int]]:
    order = rng.permutation(n)
    edges = []
    for idx in range(1, n):
        if rng.random() < hub_bias:
            parent = order[0]
        else:
            parent = order[rng.integers(0, idx)]
        edges.append((int(order[idx]), int(parent)))
    return edges


def _union(n: int, forests: list[list[tuple[int, int]]]) -> tuple[Graph, dict[tuple[int, int], int]]:
    owner: dict[tuple[int, int], int] = {}
    for k, forest in enumerate(forests):
        for u, v in forest:
            key = (min(u, v), max(u, v))
            owner.setdefault(key, k)
    return Graph.from_edges(n, sorted(owner)), owner


def forest_union_with_owners(
    n: int, alpha: int, seed: int, hub_bias: float = 0.0
) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Forest-union graph together with the forest index owning each edge."""
    if n < 1 or alpha < 1:
        raise InputError("need n >= 1 and alpha >= 1")
    rng = np.random.default_rng(seed)
    if hub_bias > 0:
        forests = [_hub_tree(n, rng, hub_bias) for _ in range(alpha)]
    else:
        forests = [_pruefer_tree(n, rng) for _ in range(alpha)]
    return _union(n, forests)


def generate_forest_union(n: int, alpha: int, seed: int) -> Graph:
    """Union of ``alpha`` uniform random spanning trees, duplicates merged.

    Arboricity is at most ``alpha`` by construction.
    """
    return forest_union_with_owners(n, alpha, seed)[0]


def generate_hub_forest_union(n: int, alpha: int, seed: int, hub_bias: float = 0.5) -> Graph:
    """Forest union whose trees attach a ``hub_bias`` fraction of vertices to
    one hub each; arboricity <= alpha with high-degree vertices."""
    return forest_union_with_owners(n, alpha, seed, hub_bias=hub_bias)[0]


def generate_random_graph(n: int, m: int, seed: int) -> Graph:
    """``m`` distinct edges drawn uniformly from all vertex pairs."""
    if n < 0 or m < 0:
        raise InputError("n and m must be non-negative")
    total = n * (n - 1) // 2
    if m > total:
        raise InputError(f"m={m} exceeds n(n-1)/2={total}")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(total, size=m, replace=False)) if m else np.zeros(0, np.int64)
    # row u holds pairs (u, u+1..n-1); offsets[u] is the index of (u, u+1)
    row_len = np.arange(n - 1, -1, -1, dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(row_len)])[:-1] if n else np.zeros(0, np.int64)
    u = np.searchsorted(offsets, idx, side="right") - 1
    v = idx - offsets[u] + u + 1
    return Graph.from_edges(n, np.stack([u, v], axis=1))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# --------------------------------------------------------------------------
# density


@dataclass(frozen=True)
class DensityReport:
    average_degree: Fraction
    degeneracy: int
    exact_arboricity: Optional[int] = None


def degeneracy(g: Graph) -> int:
    if g.m == 0:
        return 0
    return int(kernels.core_numbers(g.indptr, g.indices).max())


def exact_arboricity(g: Graph) -> int:
    """Nash-Williams maximum of ceil(|E(U)| / (|U| - 1)) over all subsets."""
    if g.n > EXACT_ARBORICITY_MAX_N:
        raise CapabilityError(f"exact arboricity enumerates subsets; n={g.n} > {EXACT_ARBORICITY_MAX_N}")
    if g.m == 0:
        return 0
    mask = np.zeros(g.n, np.int64)
    for u, v in g.edges():
        mask[u] |= 1 << int(v)
        mask[v] |= 1 << int(u)
    return int(kernels.max_subset_arboricity(mask))


def density_report(g: Graph) -> DensityReport:
    avg = Fraction(2 * g.m, g.n) if g.n else Fraction(0)
    exact = exact_arboricity(g) if g.n <= EXACT_ARBORICITY_MAX_N else None
    return DensityReport(avg, degeneracy(g), exact)


# --------------------------------------------------------------------------
# edge-list I/O

FORMATS = ("edgelist",)


def format_graph(g: Graph, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def save_graph(g: Graph, path: str | Path, format: str = "edgelist", header: Sequence[str] = ()) -> None:
    if format not in FORMATS:
        raise InputError(f"unknown graph format {format!r}")
    Path(path).write_text(format_graph(g, header))


def parse_graph(text: str) -> tuple[Graph, list[str]]:
    """Parse edge-list text; returns the graph and its comment lines."""
    comments: list[str] = []
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex out of range [0, {n})", lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("missing 'n m' header", 1)
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}", None)
    return Graph.from_edges(header[0], edges), comments


def load_graph(path: str | Path, format: str = "edgelist") -> Graph:
    if format not in FORMATS:
        raise InputError(f"unknown graph format {format!r}")
    return parse_graph(Path(path).read_text())[0]
