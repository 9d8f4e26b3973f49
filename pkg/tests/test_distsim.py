import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arbsparse import InputError
from arbsparse.distsim import (
    load_report,
    low_edges_from_knowledge,
    run_one_round_high_low,
    run_one_round_matching_sparsifier,
)
from arbsparse.graph import Graph, star_graph
from arbsparse.sparsify import build_is_sparsifier, build_matching_sparsifier

from corpus import forest_corpus
from test_graph import small_graphs

TRIANGLE = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


def central_low_edges(g, delta):
    sp = build_is_sparsifier(g, delta)
    lab = sp.g_low.labels
    return {(int(lab[u]), int(lab[v])) for u, v in sp.g_low.graph.edges()}


class TestMatchingRound:
    def test_star(self):
        edges, log = run_one_round_matching_sparsifier(star_graph(10), 4)
        assert log.rounds == 1
        assert log.sent.tolist() == [4] + [1] * 10
        assert edges == {(0, 1), (0, 2), (0, 3), (0, 4)}
        assert load_report(log)["max_sent"] == 4

    def test_triangle(self):
        edges, log = run_one_round_matching_sparsifier(TRIANGLE, 3)
        assert log.sent.tolist() == [2, 2, 2]
        assert edges == TRIANGLE.edge_set()
        assert load_report(log)["max_sent"] == 2

    def test_bad_schedule(self):
        with pytest.raises(InputError):
            run_one_round_matching_sparsifier(TRIANGLE, 2, schedule=[0, 0, 1])

    @pytest.mark.parametrize("name,g,alpha", forest_corpus(seeds=3)[::2])
    def test_corpus(self, name, g, alpha):
        delta = 4 * alpha
        edges, log = run_one_round_matching_sparsifier(g, delta)
        assert edges == build_matching_sparsifier(g, delta).graph.edge_set()
        assert log.rounds == 1
        assert np.all(log.sent <= delta)
        assert np.all(log.received <= g.degrees())
        assert log.max_message_bits <= 1


class TestHighLowRound:
    def test_star(self):
        knowledge, log = run_one_round_high_low(star_graph(10), 4)
        assert log.rounds == 1
        for leaf in range(1, 11):
            assert knowledge[leaf] == {0: False}

    def test_edgeless(self):
        _, log = run_one_round_high_low(Graph.empty(5), 3)
        assert load_report(log)["total_messages"] == 0

    @pytest.mark.parametrize("name,g,alpha", forest_corpus(seeds=3)[::2])
    def test_corpus(self, name, g, alpha):
        delta = 2 * alpha + 1
        knowledge, log = run_one_round_high_low(g, delta)
        assert log.rounds == 1
        assert low_edges_from_knowledge(g, delta, knowledge) == central_low_edges(g, delta)


@settings(max_examples=40)
@given(small_graphs(max_n=9), st.integers(1, 4), st.randoms(use_true_random=False))
def test_schedule_independence(g, delta, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    a, _ = run_one_round_matching_sparsifier(g, delta)
    b, _ = run_one_round_matching_sparsifier(g, delta, schedule=order)
    assert a == b
    ka, _ = run_one_round_high_low(g, delta)
    kb, _ = run_one_round_high_low(g, delta, schedule=order)
    assert ka == kb
