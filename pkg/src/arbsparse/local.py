"""Local-computation access to the matching sparsifier.

A :class:`SparsifierOracle` answers adjacency queries on the sparsifier by
issuing ``neighbor(v, i)`` probes to the host graph and counting them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from arbsparse.errors import InputError
from arbsparse.graph import Graph


@dataclass(frozen=True)
class ProbeCounter:
    distinct_vertices_probed: int = 0
    slot_probes: int = 0


@dataclass
class SparsifierOracle:
    graph: Graph
    delta: int
    _touched: set = field(default_factory=set, repr=False)
    _slots: int = field(default=0, repr=False)

    def __post_init__(self):
        if self.delta < 1:
            raise InputError("delta must be >= 1")

    @property
    def counter(self) -> ProbeCounter:
        return ProbeCounter(len(self._touched), self._slots)

    def _reset(self) -> None:
        self._touched = set()
        self._slots = 0

    def _probe(self, v: int, i: int) -> Optional[int]:
        self._touched.add(v)
        self._slots += 1
        return self.graph.neighbor(v, i)

    def _marks(self, u: int, v: int) -> bool:
        """Does u list v among its first delta slots? Early exit on match."""
        for i in range(self.delta):
            w = self._probe(u, i)
            if w is None:
                return False
            if w == v:
                return True
        return False

    def sparsifier_adjacency(self, v: int) -> list[int]:
        """Neighbors of ``v`` in the matching sparsifier, in slot order."""
        self.graph._check(v)
        self._reset()
        self._touched.add(v)
        marked = []
        for i in range(self.delta):
            u = self._probe(v, i)
            if u is None:
                break
            marked.append(u)
        return [u for u in marked if self._marks(u, v)]

    def is_in_validating_set(self, v: int) -> bool:
        """deg(v) >= delta, decided by the single probe at slot delta-1."""
        self.graph._check(v)
        self._reset()
        return self._probe(v, self.delta - 1) is not None


def sparsifier_adjacency(o: SparsifierOracle, v: int) -> list[int]:
    return o.sparsifier_adjacency(v)


def is_in_validating_set(o: SparsifierOracle, v: int) -> bool:
    return o.is_in_validating_set(v)


def probe_stats(o: SparsifierOracle) -> ProbeCounter:
    """Counters of the last query; resets them."""
    snap = o.counter
    o._reset()
    return snap
