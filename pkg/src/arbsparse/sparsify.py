"""Bounded-degree sparsifiers for matching, vertex cover and independent set.

All three rest on the degree threshold ``delta``: vertices of degree
``>= delta`` are *high*, the rest are *low*.

* matching: every vertex marks its first ``min(delta, deg)`` adjacency
  slots and an edge survives iff both endpoints marked it;
* vertex cover: the induced low subgraph plus the high vertices, which must
  be added to any cover of the low part (the validating set);
* independent set: the induced low subgraph alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from arbsparse import kernels
from arbsparse.errors import InputError
from arbsparse.graph import Graph, HighLowSplit, Subgraph, format_graph, split_high_low

Rational = Union[int, float, str, Fraction]


def as_fraction(x: Rational) -> Fraction:
    """Exact rational from int, Fraction, decimal string, or ``"p/q"``."""
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _check(alpha, eps) -> Fraction:
    eps = as_fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    if as_fraction(alpha) <= 0:
        raise InputError("density parameter must be positive")
    return eps


def matching_delta(alpha: int, eps: Rational) -> int:
    """ceil(5 * (5/eps + 1) * 2 * alpha), with eps clamped to at most 1."""
    eps = min(_check(alpha, eps), Fraction(1))
    return math.ceil(5 * (5 / eps + 1) * 2 * as_fraction(alpha))


def vc_delta(alpha: int, eps: Rational) -> int:
    """ceil((1/eps + 1) * 2 * alpha)."""
    eps = _check(alpha, eps)
    return math.ceil((1 / eps + 1) * 2 * as_fraction(alpha))


def is_delta(beta: Rational, eps: Rational) -> int:
    """ceil(((beta + 1)/eps + 1) * beta); needs beta >= 1 and eps < beta."""
    beta = as_fraction(beta)
    eps = _check(beta, eps)
    if beta < 1:
        raise InputError("average-degree parameter beta must be >= 1")
    if eps >= beta:
        raise InputError(f"eps={eps} must be smaller than beta={beta}")
    return math.ceil(((beta + 1) / eps + 1) * beta)


@dataclass(frozen=True)
class MatchingSparsifier:
    base: Graph = field(repr=False)
    delta: int
    graph: Graph

    @property
    def edges(self) -> np.ndarray:
        return self.graph.edges()


@dataclass(frozen=True)
class VcSparsifier:
    g_low: Subgraph = field(repr=False)
    validating_set: np.ndarray
    delta: int
    split: HighLowSplit = field(repr=False)


@dataclass(frozen=True)
class IsSparsifier:
    g_low: Subgraph = field(repr=False)
    delta: int
    split: HighLowSplit = field(repr=False)


def _check_delta(delta: int) -> None:
    if delta < 1:
        raise InputError("delta must be >= 1")


def build_matching_sparsifier(g: Graph, delta: int) -> MatchingSparsifier:
    _check_delta(delta)
    keep = kernels.matching_sparsifier_mask(g.indptr, g.indices, int(delta))
    return MatchingSparsifier(g, int(delta), g.edge_subgraph(keep))


def build_vc_sparsifier(g: Graph, delta: int) -> VcSparsifier:
    split = split_high_low(g, delta)
    return VcSparsifier(split.g_low(), split.high, int(delta), split)


def build_is_sparsifier(g: Graph, delta: int) -> IsSparsifier:
    split = split_high_low(g, delta)
    return IsSparsifier(split.g_low(), int(delta), split)


def _low_in_host_ids(split: HighLowSplit) -> Graph:
    """G[low] on the host vertex ids (high vertices left isolated)."""
    e = split.graph.edges()
    low = np.zeros(split.graph.n, bool)
    low[split.low] = True
    keep = low[e[:, 0]] & low[e[:, 1]]
    return Graph.from_edges(split.graph.n, e[keep])


def format_sparsifier(sp: Union[MatchingSparsifier, VcSparsifier, IsSparsifier]) -> str:
    """Edge-list text with ``# delta=`` (and ``# validating=``) headers.

    Vertex ids are those of the host graph.
    """
    header = [f"delta={sp.delta}"]
    if isinstance(sp, MatchingSparsifier):
        return format_graph(sp.graph, header)
    if isinstance(sp, VcSparsifier):
        header.append("validating=" + " ".join(str(int(v)) for v in sp.validating_set))
    return format_graph(_low_in_host_ids(sp.split), header)


def parse_sparsifier_header(comments: list[str]) -> tuple[int | None, list[int] | None]:
    delta = None
    validating = None
    for c in comments:
        if c.startswith("delta="):
            delta = int(c[6:])
        elif c.startswith("validating="):
            validating = [int(x) for x in c[11:].split()]
    return delta, validating
