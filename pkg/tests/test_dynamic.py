from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arbsparse import InputError, ParseError
from arbsparse.dynamic import (
    DELETE,
    INSERT,
    DynamicGraph,
    HighLowTracker,
    default_vc_solver,
    delete_edge,
    format_trace,
    generate_trace,
    insert_edge,
    lazy_is_init,
    lazy_is_update,
    lazy_vc_init,
    lazy_vc_update,
    parse_trace,
    query_in_cover,
    update_stats,
)
from arbsparse.graph import Graph, generate_forest_union, generate_random_graph, star_graph
from arbsparse.solvers import max_is_exact, min_vc_exact, verify_is, verify_vc

from oracles import min_forest_partition


class TestDynamicGraph:
    def test_round_trip(self):
        dg = DynamicGraph(4, [(0, 1)])
        insert_edge(dg, 2, 3)
        delete_edge(dg, 2, 3)
        assert dg.edges() == [(0, 1)] and dg.m == 1 and dg.degree == [1, 1, 0, 0]

    @pytest.mark.parametrize(
        "op,u,v", [(INSERT, 0, 1), (DELETE, 2, 3), (INSERT, 1, 1), (INSERT, 0, 9), ("*", 0, 2)]
    )
    def test_preconditions(self, op, u, v):
        dg = DynamicGraph(4, [(0, 1)])
        with pytest.raises(InputError):
            dg.apply(op, u, v)

    def test_replay_matches_scratch(self):
        base, ops = generate_trace(60, 2, 10_000, 4)
        dg = DynamicGraph.from_graph(base)
        edges = set(base.edge_set())
        for op, u, v in ops:
            dg.apply(op, u, v)
            if op == INSERT:
                edges.add((u, v))
            else:
                edges.remove((u, v))
        assert dg.snapshot() == Graph.from_edges(60, sorted(edges))


class TestTracker:
    def test_flip_on_delta_th_edge(self):
        dg = DynamicGraph(5, [(0, 1), (0, 2)])
        tr = HighLowTracker(dg, 3)
        assert not tr.is_high(0)
        dg.insert_edge(0, 3)
        assert tr.is_high(0) and tr.high == {0}
        dg.delete_edge(0, 1)
        assert not tr.is_high(0) and tr.flips == 2

    def test_tracks_scratch_split(self):
        base, ops = generate_trace(40, 3, 2000, 1)
        dg = DynamicGraph.from_graph(base)
        tr = HighLowTracker(dg, 4)
        for op, u, v in ops:
            dg.apply(op, u, v)
            assert tr.membership == [d >= 4 for d in dg.degree]


class TestTraces:
    def test_deterministic_and_parsable(self):
        a = generate_trace(30, 2, 300, 9)
        b = generate_trace(30, 2, 300, 9)
        assert a[0] == b[0] and a[1] == b[1]
        assert parse_trace(format_trace(a[1])) == a[1]

    def test_arboricity_preserved(self):
        base, ops = generate_trace(12, 2, 400, 3)
        dg = DynamicGraph.from_graph(base)
        for i, (op, u, v) in enumerate(ops):
            dg.apply(op, u, v)
            if i % 50 == 0:
                assert min_forest_partition(12, dg.edges()) <= 2

    def test_mix(self):
        _, ops = generate_trace(100, 2, 1000, 0)
        ins = sum(op == INSERT for op, _, _ in ops)
        assert 350 < ins < 650

    def test_parse_error(self):
        with pytest.raises(ParseError) as info:
            parse_trace("+ 0 1\n* 1 2\n")
        assert info.value.lineno == 2


class TestLazyVc:
    def test_star(self):
        dg = DynamicGraph.from_graph(star_graph(10))
        st_ = lazy_vc_init(dg, 1, 1, 1)
        assert st_.cover.vertices == frozenset({0})
        assert query_in_cover(st_, 0) and not query_in_cover(st_, 5)

    def test_edgeless(self):
        st_ = lazy_vc_init(DynamicGraph(5), 1, 1, 1)
        assert st_.cover_size == 0 and st_.epoch_remaining == 0

    def test_insert_between_covered(self):
        dg = DynamicGraph.from_graph(generate_forest_union(40, 1, 2))
        s = lazy_vc_init(dg, 2, Fraction(1, 2), 1)
        covered = sorted(s.cover.vertices)
        u, v = next((a, b) for a in covered for b in covered if a < b and not dg.has_edge(a, b))
        s.epoch_remaining = 5
        dg.insert_edge(u, v)
        assert lazy_vc_update(s, INSERT, u, v) == []

    def test_insert_between_uncovered_isolated(self):
        dg = DynamicGraph(60, [(i, i + 1) for i in range(0, 40, 2)])
        s = lazy_vc_init(dg, 1, Fraction(1, 2), 1)
        s.epoch_remaining = 5
        dg.insert_edge(50, 51)
        assert lazy_vc_update(s, INSERT, 50, 51) == [(50, 1)]
        assert s.cover_size == 21

    def test_higher_degree_endpoint_added(self):
        # the exact cover of the path 40-41-42 is {41}; 42 stays uncovered with degree 1
        dg = DynamicGraph(60, [(i, i + 1) for i in range(0, 40, 2)] + [(40, 41), (41, 42)])
        s = lazy_vc_init(dg, 1, Fraction(1, 2), 1)
        assert s.in_cover[41] and not s.in_cover[42]
        s.epoch_remaining = 5
        dg.insert_edge(42, 50)
        assert lazy_vc_update(s, INSERT, 42, 50) == [(42, 1)]

    def test_delete_never_shrinks(self):
        dg = DynamicGraph.from_graph(generate_forest_union(40, 2, 2))
        s = lazy_vc_init(dg, 2, Fraction(1, 2), 2)
        s.epoch_remaining = 100
        before = s.cover_size
        for u, v in dg.edges()[:10]:
            s.apply(DELETE, u, v)
            assert s.cover_size == before

    def test_one_epoch_one_rebuild(self):
        base = generate_forest_union(80, 2, 1)
        s = lazy_vc_init(DynamicGraph.from_graph(base), 2, Fraction(1, 2), 2)
        length = s.epoch_length
        assert length >= 1
        trace_base, ops = generate_trace(80, 2, length, 1)
        assert trace_base == base
        for op, u, v in ops:
            s.apply(op, u, v)
        assert update_stats(s).rebuild_count == 1

    def test_zero_updates(self):
        s = lazy_vc_init(DynamicGraph(4), 2, 1, 1)
        st_ = update_stats(s)
        assert (st_.updates, st_.rebuild_count, st_.changes_log) == (0, 0, 0)

    def test_unknown_t(self):
        with pytest.raises(InputError):
            default_vc_solver(3)

    @pytest.mark.parametrize("t", [1, 2])
    def test_initial_cover_ratio(self, t):
        for seed in range(6):
            g = generate_forest_union(48, 2, seed)
            s = lazy_vc_init(DynamicGraph.from_graph(g), t, Fraction(1, 2), 2)
            assert verify_vc(g, s.cover)
            assert s.cover_size <= (t + Fraction(1, 2)) * min_vc_exact(g).size

    def test_long_run(self):
        base, ops = generate_trace(80, 2, 3000, 7)
        s = lazy_vc_init(DynamicGraph.from_graph(base), 2, Fraction(1, 2), 2)
        for i, (op, u, v) in enumerate(ops, 1):
            s.apply(op, u, v)
            snap = s.dg.snapshot()
            assert verify_vc(snap, s.cover)
            if i % 250 == 0:
                assert s.cover_size <= 3 * min_vc_exact(snap).size
        for r in s.rebuilds:
            assert r.scan_size <= (r.cover_before + 1) * s.delta
        stats = update_stats(s)
        assert stats.rebuild_count <= stats.updates // max(1, stats.min_epoch_length) + 1
        assert stats.amortized_changes <= Fraction(stats.max_cover, max(1, stats.min_epoch_length)) + 1


class TestLazyIs:
    def test_insert_between_non_members(self):
        dg = DynamicGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        s = lazy_is_init(dg, 1, Fraction(1, 2))
        assert s.iset.vertices == frozenset({0, 2, 4})
        s.epoch_remaining = 5
        dg.insert_edge(1, 3)
        assert lazy_is_update(s, INSERT, 1, 3) == []
        assert s.iset.vertices == frozenset({0, 2, 4})

    def test_insert_inside_set_evicts(self):
        dg = DynamicGraph.from_graph(star_graph(6))
        s = lazy_is_init(dg, 1, Fraction(1, 2))
        s.epoch_remaining = 5
        dg.insert_edge(1, 2)
        changes = lazy_is_update(s, INSERT, 1, 2)
        # equal degree 2: the lower id is evicted
        assert changes == [(1, -1)]
        assert verify_is(dg.snapshot(), s.iset)

    def test_random_sequence(self):
        g = generate_random_graph(40, 40, 3)
        dg = DynamicGraph.from_graph(g)
        s = lazy_is_init(dg, 1, Fraction(1, 2))
        rng = np.random.default_rng(5)
        for i in range(1, 601):
            if rng.random() < 0.5 and dg.m:
                u, v = dg.edges()[int(rng.integers(dg.m))]
                s.apply(DELETE, u, v)
            else:
                while True:
                    u, v = (int(x) for x in rng.choice(40, 2, replace=False))
                    if not dg.has_edge(u, v):
                        break
                s.apply(INSERT, u, v)
            snap = dg.snapshot()
            assert verify_is(snap, s.iset)
            if i % 50 == 0:
                assert max_is_exact(snap).size <= 2 * s.set_size


@settings(max_examples=25)
@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_vc_valid_after_every_update(seed, t):
    base, ops = generate_trace(24, 2, 150, seed)
    s = lazy_vc_init(DynamicGraph.from_graph(base), t, Fraction(1, 2), 2)
    for op, u, v in ops:
        s.apply(op, u, v)
        cov = s.in_cover
        assert all(cov[a] or cov[b] for a, b in s.dg.edges())
        assert s.tracker.membership == [d >= s.delta for d in s.dg.degree]
