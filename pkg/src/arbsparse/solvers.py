"""Solution types, validators, exact desk-scale oracles and approximations
for matching, vertex cover and independent set."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from arbsparse import kernels
from arbsparse.errors import CapabilityError, InputError, ParseError
from arbsparse.graph import Graph, HighLowSplit, induced_subgraph

#: branch-and-bound node budget shared by the exact oracles
DEFAULT_NODE_LIMIT = 5_000_000


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", norm)

    @classmethod
    def from_mate(cls, mate: np.ndarray) -> "Matching":
        return cls(tuple((int(u), int(v)) for u, v in enumerate(mate) if v > u))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def matched(self) -> dict[int, int]:
        partner = {}
        for u, v in self.edges:
            partner[u] = v
            partner[v] = u
        return partner

    def vertices(self) -> set[int]:
        return set(self.matched)


@dataclass(frozen=True)
class _VertexSet:
    vertices: frozenset[int]

    def __init__(self, vertices: Iterable[int] = ()):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[int]:
        return sorted(self.vertices)


class VertexCover(_VertexSet):
    pass


class IndependentSet(_VertexSet):
    pass


Solution = Union[Matching, VertexCover, IndependentSet]


def _mask(vertices: Iterable[int], n: int) -> np.ndarray:
    mask = np.zeros(n, bool)
    idx = np.fromiter((int(v) for v in vertices), dtype=np.int64)
    mask[idx] = True
    return mask


# --------------------------------------------------------------------------
# validators


def verify_matching(g: Graph, m: Union[Matching, Iterable[Sequence[int]]]) -> bool:
    edges = m.edges if isinstance(m, Matching) else [tuple(e) for e in m]
    used: set[int] = set()
    for u, v in edges:
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return False
        if u in used or v in used:
            return False
        used.update((u, v))
    return True


def verify_vc(g: Graph, c: Union[VertexCover, Iterable[int]]) -> bool:
    verts = c.vertices if isinstance(c, _VertexSet) else set(c)
    if any(not 0 <= v < g.n for v in verts):
        return False
    e = g.edges()
    mask = _mask(verts, g.n)
    return bool(np.all(mask[e[:, 0]] | mask[e[:, 1]]))


def verify_is(g: Graph, s: Union[IndependentSet, Iterable[int]]) -> bool:
    verts = s.vertices if isinstance(s, _VertexSet) else set(s)
    if any(not 0 <= v < g.n for v in verts):
        return False
    e = g.edges()
    mask = _mask(verts, g.n)
    return not bool(np.any(mask[e[:, 0]] & mask[e[:, 1]]))


# --------------------------------------------------------------------------
# matching


def greedy_maximal_matching(g: Graph, order: Optional[Sequence[Sequence[int]]] = None) -> Matching:
    """Maximal matching scanning edges in ``order`` (default lexicographic)."""
    e = g.edges() if order is None else np.asarray(order, dtype=np.int64).reshape(-1, 2)
    mate = kernels.greedy_matching_edges(g.n, np.ascontiguousarray(e[:, 0]), np.ascontiguousarray(e[:, 1]))
    return Matching.from_mate(mate)


def _run(search, g: Graph, bound: int, node_limit: int, what: str):
    counter = np.zeros(1, np.int64)
    alive = np.ones(g.n, np.bool_)
    size, sol = search(g.indptr, g.indices, alive, bound, counter, node_limit)
    if counter[0] > node_limit:
        raise CapabilityError(f"{what}: branch-and-bound exceeded {node_limit} nodes (n={g.n}, m={g.m})")
    return int(size), sol


def max_matching_exact(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> Matching:
    size, mate = _run(kernels.mm_search, g, -1, node_limit, "max_matching_exact")
    m = Matching.from_mate(mate)
    assert m.size == size
    return m


def augmenting_path_limit(eps: Fraction) -> int:
    return 2 * math.ceil(1 / Fraction(eps)) - 1


def approx_matching_short_augment(g: Graph, eps) -> Matching:
    """(1+eps)-approximate maximum matching: start from the lexicographic
    greedy matching and augment along alternating paths of at most
    2*ceil(1/eps)-1 edges until none remain."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    e = g.edges()
    mate = kernels.greedy_matching_edges(g.n, np.ascontiguousarray(e[:, 0]), np.ascontiguousarray(e[:, 1]))
    kernels.augment_short_paths(g.indptr, g.indices, mate, augmenting_path_limit(eps))
    return Matching.from_mate(mate)


def eta_maximality(g: Graph, m: Matching, node_limit: int = DEFAULT_NODE_LIMIT) -> Union[Fraction, float]:
    """Smallest eta for which ``m`` is eta-maximal in ``g``.

    The numerator is the maximum number of edges among unmatched vertices.
    Returns ``math.inf`` for an empty matching when edges could be added.
    """
    if not verify_matching(g, m):
        raise InputError("not a matching of the graph")
    matched = m.vertices()
    free = [v for v in range(g.n) if v not in matched]
    addable = max_matching_exact(induced_subgraph(g, free).graph, node_limit).size
    if m.size == 0:
        return Fraction(0) if addable == 0 else math.inf
    return Fraction(addable, m.size)


# --------------------------------------------------------------------------
# vertex cover


def min_vc_exact(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> VertexCover:
    size, mask = _run(kernels.mvc_search, g, g.n + 1, node_limit, "min_vc_exact")
    cover = VertexCover(np.flatnonzero(mask))
    assert cover.size == size
    return cover


def vc_from_matching(m: Matching) -> VertexCover:
    return VertexCover(m.vertices())


def assemble_vc(vc_low: VertexCover, split: HighLowSplit) -> VertexCover:
    """Cover of G from a cover of G[low] plus the validating set V_high."""
    g = split.graph
    low = np.zeros(g.n, bool)
    low[split.low] = True
    if any(not (0 <= v < g.n and low[v]) for v in vc_low.vertices):
        raise InputError("low cover contains vertices outside V_low")
    e = g.edges()
    both_low = low[e[:, 0]] & low[e[:, 1]]
    cov = _mask(vc_low.vertices, g.n)
    if not np.all((cov[e[:, 0]] | cov[e[:, 1]])[both_low]):
        raise InputError("low cover does not cover G[V_low]")
    return VertexCover(vc_low.vertices | frozenset(int(v) for v in split.high))


# --------------------------------------------------------------------------
# independent set


def max_is_exact(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> IndependentSet:
    size, mask = _run(kernels.mis_search, g, -1, node_limit, "max_is_exact")
    iset = IndependentSet(np.flatnonzero(mask))
    assert iset.size == size
    return iset


def greedy_is_min_degree(g: Graph) -> IndependentSet:
    return IndependentSet(np.flatnonzero(kernels.greedy_is_min_degree(g.indptr, g.indices)))


# --------------------------------------------------------------------------
# serialization

_TYPE_NAMES = {Matching: "matching", VertexCover: "vc", IndependentSet: "is"}


def format_solution(sol: Solution) -> str:
    lines = [f"# type={_TYPE_NAMES[type(sol)]}"]
    if isinstance(sol, Matching):
        lines.extend(f"{u} {v}" for u, v in sol.edges)
    else:
        lines.extend(str(v) for v in sol.sorted())
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> Solution:
    kind = None
    items: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("type="):
                kind = body[5:]
            continue
        try:
            items.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        want = 2 if kind == "matching" else 1
        if len(items[-1]) != want:
            raise ParseError(f"expected {want} integer(s) per line", lineno)
    if kind == "matching":
        return Matching(tuple(items))  # type: ignore[arg-type]
    if kind == "vc":
        return VertexCover(v for (v,) in items)
    if kind == "is":
        return IndependentSet(v for (v,) in items)
    raise ParseError(f"missing or unknown '# type=' header: {kind!r}", 1)
