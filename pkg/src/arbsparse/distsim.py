"""Synchronous message-passing simulation of the one-round constructions.

Each vertex runs a handler that is a pure function of its local view (its
id, degree and adjacency) and, in the receive phase, of its inbox. The
simulator delivers messages in a caller-chosen schedule; outputs must not
depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from arbsparse.errors import InputError
from arbsparse.graph import Graph


class Message(NamedTuple):
    sender: int
    slot: int  # sender-side slot index of the edge the message travels on
    bit: int


@dataclass(frozen=True)
class RoundLog:
    rounds: int
    sent: np.ndarray
    received: np.ndarray
    max_message_bits: int


@dataclass(frozen=True)
class LocalView:
    vertex: int
    neighbors: tuple[int, ...]
    delta: int

    @property
    def degree(self) -> int:
        return len(self.neighbors)


SendFn = Callable[[LocalView], list[tuple[int, int]]]
ReceiveFn = Callable[[LocalView, list[Message]], object]


def _simulate(g: Graph, delta: int, send: SendFn, receive: ReceiveFn, schedule: Optional[Sequence[int]]):
    if delta < 1:
        raise InputError("delta must be >= 1")
    n = g.n
    order = list(range(n)) if schedule is None else [int(v) for v in schedule]
    if sorted(order) != list(range(n)):
        raise InputError("schedule must be a permutation of the vertices")
    views = [LocalView(v, tuple(int(u) for u in g.adjacency(v)), delta) for v in range(n)]
    sent = np.zeros(n, np.int64)
    received = np.zeros(n, np.int64)
    inbox: list[list[Message]] = [[] for _ in range(n)]
    bits = 0
    # one synchronous round: all sends, then all receives
    for v in order:
        for slot, bit in send(views[v]):
            u = views[v].neighbors[slot]
            inbox[u].append(Message(v, slot, bit))
            sent[v] += 1
            received[u] += 1
            bits = max(bits, 1)
    out = [None] * n
    for v in order:
        msgs = sorted(inbox[v])
        out[v] = receive(views[v], msgs)
    return out, RoundLog(1, sent, received, bits)


def _mark_send(view: LocalView) -> list[tuple[int, int]]:
    return [(i, 1) for i in range(min(view.delta, view.degree))]


def _mark_receive(view: LocalView, inbox: list[Message]) -> tuple[int, ...]:
    mine = set(view.neighbors[: view.delta])
    return tuple(sorted(m.sender for m in inbox if m.sender in mine))


def run_one_round_matching_sparsifier(
    g: Graph, delta: int, schedule: Optional[Sequence[int]] = None
) -> tuple[set[tuple[int, int]], RoundLog]:
    """Every vertex sends a one-bit mark along its first min(delta, deg)
    slots; an edge is output iff both endpoints marked it."""
    out, log = _simulate(g, delta, _mark_send, _mark_receive, schedule)
    edges = {(min(v, u), max(v, u)) for v, nbrs in enumerate(out) for u in nbrs}
    return edges, log


def _status_send(view: LocalView) -> list[tuple[int, int]]:
    bit = 1 if view.degree >= view.delta else 0
    return [(i, bit) for i in range(view.degree)]


def _status_receive(view: LocalView, inbox: list[Message]) -> dict[int, bool]:
    """Neighbor -> is-low, learned from the neighbors' announcements."""
    return {m.sender: m.bit == 0 for m in inbox}


def run_one_round_high_low(
    g: Graph, delta: int, schedule: Optional[Sequence[int]] = None
) -> tuple[list[dict[int, bool]], RoundLog]:
    """Every vertex announces whether its degree is below delta."""
    return _simulate(g, delta, _status_send, _status_receive, schedule)


def low_edges_from_knowledge(g: Graph, delta: int, knowledge: list[dict[int, bool]]) -> set[tuple[int, int]]:
    """Edges of G[low] as seen locally: v is low and v learned u is low."""
    edges = set()
    for v, known in enumerate(knowledge):
        if g.degree(v) >= delta:
            continue
        for u, u_low in known.items():
            if u_low:
                edges.add((min(u, v), max(u, v)))
    return edges


def load_report(log: RoundLog) -> dict[str, float]:
    n = log.sent.size
    return {
        "rounds": log.rounds,
        "max_sent": int(log.sent.max()) if n else 0,
        "mean_sent": float(log.sent.mean()) if n else 0.0,
        "max_received": int(log.received.max()) if n else 0,
        "mean_received": float(log.received.mean()) if n else 0.0,
        "total_messages": int(log.sent.sum()),
        "max_message_bits": log.max_message_bits,
    }
