"""Graph corpus shared by the unit and acceptance tests."""

from __future__ import annotations

from fractions import Fraction

from arbsparse.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    generate_forest_union,
    generate_hub_forest_union,
    generate_random_graph,
    path_graph,
    star_graph,
)

EPS_MATCHING = (Fraction(1), Fraction(1, 2))


def forest_corpus(max_n: int = 64, seeds: int = 12) -> list[tuple[str, Graph, int]]:
    """(name, graph, alpha) triples: plain and hub-heavy forest unions plus
    adversarial stars, cliques and cycles."""
    out = []
    sizes = [n for n in (16, 32, 48, 64) if n <= max_n] or [max_n]
    for alpha in (1, 2, 3):
        for s in range(seeds):
            n = sizes[s % len(sizes)]
            out.append((f"forest-n{n}-a{alpha}-s{s}", generate_forest_union(n, alpha, s), alpha))
        for s in range(seeds // 2):
            n = sizes[-1 - s % len(sizes)]
            out.append((f"hub-n{n}-a{alpha}-s{s}", generate_hub_forest_union(n, alpha, 100 + s, 0.7), alpha))
    for leaves in (5, 10, 30, max_n - 1):
        out.append((f"star-{leaves}", star_graph(leaves), 1))
    for k in (4, 5, 7):
        # K_k has arboricity ceil(k/2)
        out.append((f"clique-{k}", complete_graph(k), -(-k // 2)))
    out.append(("cycle-9", cycle_graph(9), 2))
    out.append(("path-12", path_graph(12), 1))
    out.append(("empty-5", Graph.empty(5), 1))
    return out


def random_corpus(count: int = 60, max_n: int = 50) -> list[tuple[str, Graph, Fraction]]:
    """Random graphs with average degree 1, 2 or 3: (name, graph, beta)."""
    out = []
    for s in range(count):
        beta = Fraction(1 + s % 3)
        n = 20 + (s * 7) % (max_n - 19)
        m = int(beta * n / 2)
        out.append((f"random-n{n}-b{beta}-s{s}", generate_random_graph(n, m, s), beta))
    return out
