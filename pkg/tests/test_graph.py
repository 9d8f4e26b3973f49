from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arbsparse import CapabilityError, InputError, ParseError
from arbsparse.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    degeneracy,
    density_report,
    exact_arboricity,
    forest_union_with_owners,
    format_graph,
    generate_forest_union,
    generate_hub_forest_union,
    generate_random_graph,
    induced_subgraph,
    load_graph,
    neighbor,
    parse_graph,
    path_graph,
    save_graph,
    split_high_low,
    star_graph,
)

from oracles import degeneracy_naive, edges_of, min_forest_partition, nash_williams

TRIANGLE = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@st.composite
def small_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph.from_edges(n, chosen)


class TestConstruction:
    def test_slots_sorted(self):
        g = Graph.from_edges(4, [(3, 0), (0, 1), (2, 0)])
        assert list(g.adjacency(0)) == [1, 2, 3]

    def test_neighbor_triangle(self):
        assert neighbor(TRIANGLE, 0, 0) == 1
        assert neighbor(TRIANGLE, 0, 1) == 2
        assert neighbor(TRIANGLE, 0, 2) is None

    def test_neighbor_star_fifth_leaf(self):
        g = star_graph(5)
        assert neighbor(g, 0, 4) == 5

    def test_neighbor_out_of_range(self):
        with pytest.raises(InputError):
            neighbor(TRIANGLE, 3, 0)
        with pytest.raises(InputError):
            neighbor(TRIANGLE, -1, 0)

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(InputError):
            Graph.from_edges(3, edges)

    def test_edges_lexicographic(self):
        g = Graph.from_edges(4, [(3, 2), (1, 0), (2, 0)])
        assert g.edges().tolist() == [[0, 1], [0, 2], [2, 3]]

    def test_immutable(self):
        with pytest.raises(ValueError):
            TRIANGLE.indices[0] = 2

    def test_trailing_isolated_vertices(self):
        g = Graph.from_edges(6, [(0, 1)])
        assert g.degrees().tolist() == [1, 1, 0, 0, 0, 0]
        sub = g.edge_subgraph(np.ones(g.indices.size, bool))
        assert sub == g

    @given(small_graphs())
    def test_degree_sum(self, g):
        assert int(g.degrees().sum()) == 2 * g.m
        for u, v in g.edges():
            assert g.has_edge(int(v), int(u))


class TestSplit:
    def test_star(self):
        s = split_high_low(star_graph(10), 4)
        assert s.high.tolist() == [0]
        assert s.low.tolist() == list(range(1, 11))

    def test_triangle(self):
        s = split_high_low(TRIANGLE, 3)
        assert s.high.size == 0 and s.low.tolist() == [0, 1, 2]

    def test_path(self):
        s = split_high_low(path_graph(5), 2)
        assert s.high.tolist() == [1, 2, 3]
        assert s.low.tolist() == [0, 4]

    def test_bad_delta(self):
        with pytest.raises(InputError):
            split_high_low(TRIANGLE, 0)

    @given(small_graphs(), st.integers(1, 6))
    def test_partition(self, g, delta):
        s = split_high_low(g, delta)
        assert sorted(s.high.tolist() + s.low.tolist()) == list(range(g.n))
        low = s.g_low()
        if low.graph.n:
            assert low.graph.max_degree() < delta


class TestInduced:
    def test_relabel_and_lift(self):
        g = cycle_graph(6)
        sub = induced_subgraph(g, [5, 0, 1])
        assert sub.labels.tolist() == [0, 1, 5]
        assert sub.graph.edge_set() == {(0, 1), (0, 2)}
        assert sub.lift([2, 1]).tolist() == [1, 5]


class TestGenerators:
    def test_single_vertex(self):
        g = generate_forest_union(1, 3, 99)
        assert g.n == 1 and g.m == 0

    def test_forest_alpha_one(self):
        g = generate_forest_union(50, 1, 7)
        assert g.m == 49
        assert degeneracy(g) == 1

    def test_owners_are_forests(self):
        g, owner = forest_union_with_owners(40, 3, 4)
        assert set(owner) == g.edge_set()
        for k in range(3):
            part = [e for e, o in owner.items() if o == k]
            assert min_forest_partition(40, part) <= 1

    def test_sampled_subsets_arboricity(self):
        g = generate_forest_union(100, 3, 1)
        rng = np.random.default_rng(0)
        for _ in range(40):
            verts = rng.choice(100, size=int(rng.integers(2, 17)), replace=False)
            sub = induced_subgraph(g, verts).graph
            assert exact_arboricity(sub) <= 3

    def test_hub_generator_has_hub(self):
        g = generate_hub_forest_union(64, 2, 0, 0.8)
        assert g.max_degree() >= 30
        assert degeneracy(g) <= 3

    def test_random_k4(self):
        assert generate_random_graph(4, 6, 3) == complete_graph(4)

    def test_random_edgeless(self):
        assert generate_random_graph(10, 0, 1).m == 0

    def test_random_average_degree(self):
        assert density_report(generate_random_graph(20, 30, 5)).average_degree == Fraction(3)

    def test_random_infeasible(self):
        with pytest.raises(InputError):
            generate_random_graph(4, 7, 0)

    def test_deterministic(self):
        assert format_graph(generate_forest_union(30, 2, 5)) == format_graph(generate_forest_union(30, 2, 5))
        assert format_graph(generate_random_graph(30, 40, 5)) == format_graph(generate_random_graph(30, 40, 5))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 30), st.integers(0, 2000))
    def test_random_graph_pairs_valid(self, n, seed):
        m = n * (n - 1) // 4
        g = generate_random_graph(n, m, seed)
        assert g.m == m


class TestDensity:
    def test_forest(self):
        assert degeneracy(path_graph(6)) == 1

    def test_k4(self):
        assert degeneracy(complete_graph(4)) == 3
        assert exact_arboricity(complete_graph(4)) == 2

    def test_c5(self):
        assert degeneracy(cycle_graph(5)) == 2

    def test_tree(self):
        assert exact_arboricity(generate_forest_union(12, 1, 2)) == 1

    def test_too_large(self):
        with pytest.raises(CapabilityError):
            exact_arboricity(path_graph(17))

    def test_petersen(self):
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        g = Graph.from_edges(10, outer + spokes + inner)
        assert exact_arboricity(g) == 2
        assert nash_williams(10, edges_of(g)) == 2

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(max_n=8))
    def test_arboricity_matches_forest_partition(self, g):
        assert exact_arboricity(g) == min_forest_partition(g.n, edges_of(g))

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(max_n=10))
    def test_degeneracy_matches_peeling(self, g):
        d = degeneracy(g)
        assert d == degeneracy_naive(g.n, edges_of(g))
        # alpha <= degeneracy <= 2 alpha - 1
        a = exact_arboricity(g)
        assert a <= d <= max(2 * a - 1, 0)


class TestIO:
    def test_round_trip(self, tmp_path):
        g = complete_graph(4)
        p = tmp_path / "k4.txt"
        save_graph(g, p, header=["k4"])
        h = load_graph(p)
        assert h == g
        for v in range(4):
            assert h.adjacency(v).tolist() == g.adjacency(v).tolist()

    def test_comments_returned(self):
        g, comments = parse_graph("# hello\n2 1\n0 1\n")
        assert comments == ["hello"] and g.m == 1

    @pytest.mark.parametrize(
        "text,line",
        [
            ("3 2\n0 1\n1 0\n", 3),
            ("3 1\n1 1\n", 2),
            ("3 1\n0 7\n", 2),
            ("3 1\n0 x\n", 2),
            ("3 1\n0 1 2\n", 2),
        ],
    )
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_graph(text)
        assert info.value.lineno == line
        assert f"line {line}" in str(info.value)

    def test_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_graph("3 2\n0 1\n")

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_graph("# only comments\n")

    @given(small_graphs())
    def test_format_parse_identity(self, g):
        assert parse_graph(format_graph(g))[0] == g
