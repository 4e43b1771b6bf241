"""Gadget constructions, their terminal-forcing properties, and the reductions."""

from fractions import Fraction
from itertools import combinations

import pytest

from archipelago.gadgets import (
    CountingCheck,
    GadgetGraph,
    Hypergraph3,
    _planar_embedding,
    build_equalizer,
    build_J,
    build_N,
    build_tree,
    build_uncrosser,
    counting_check_J,
    forward_coloring_girth8,
    hyper2color,
    parse_hypergraph,
    reduce_girth8,
    reduce_planar,
    serialize_hypergraph,
    tree_leaf,
    validate_uncrosser,
)
from archipelago.graphs import (
    Graph,
    bipartition,
    degeneracy_order,
    distance,
    euler_characteristic,
    girth,
    has_triangle,
)
from archipelago.peeling import audit
from archipelago.solver import mc_decide

FANO = Hypergraph3.from_edges(
    7, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
)


class TestHypergraphType:
    def test_roundtrip(self):
        h = Hypergraph3.from_edges(5, [(2, 0, 1), (2, 3, 4)])
        assert h.edges == ((0, 1, 2), (2, 3, 4))
        assert parse_hypergraph(serialize_hypergraph(h)) == h

    def test_parse_comments_and_errors(self):
        h = parse_hypergraph("# example\n4 1\n3 1 0\n")
        assert h.edges == ((0, 1, 3),)
        with pytest.raises(ValueError):
            parse_hypergraph("4 2\n0 1 2\n")
        with pytest.raises(ValueError):
            parse_hypergraph("4\n")
        with pytest.raises(ValueError):
            parse_hypergraph("")

    def test_validation(self):
        with pytest.raises(ValueError):
            Hypergraph3(4, ((0, 1, 1),))
        with pytest.raises(ValueError):
            Hypergraph3(3, ((0, 1, 3),))
        with pytest.raises(ValueError):
            Hypergraph3(4, ((2, 1, 0),))

    def test_gadget_graph_validation(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(ValueError):
            GadgetGraph(g, {"y": 5})


class TestCouplerTrees:
    def test_tree_shape(self):
        t = build_tree(2)
        assert t.graph.n == 1 + 10 + 100 + 1000
        assert t.graph.m == t.graph.n - 1
        assert t.terminals == {"x": 0}
        assert t.graph.degree(0) == 10
        assert girth(t.graph) == float("inf")

    def test_leaf_labels(self):
        leaf_base = 1 + 10 + 100
        assert tree_leaf(2, 1, 1, 1) == leaf_base
        assert tree_leaf(2, 10, 10, 10) == build_tree(2).graph.n - 1
        assert tree_leaf(2, 1, 1, 2) == leaf_base + 1
        assert tree_leaf(2, 2, 1, 1) == leaf_base + 100
        with pytest.raises(ValueError):
            tree_leaf(2, 0, 1, 1)
        with pytest.raises(ValueError):
            tree_leaf(2, 1, 11, 1)

    def test_too_small(self):
        for build in (build_tree, build_J, build_N, build_equalizer, build_uncrosser):
            with pytest.raises(ValueError):
                build(1)

    def test_coupler_size_formula(self):
        for t in (2, 3):
            b = 5 * t
            expected = 2 * (1 + b + b * b) + b**3
            assert build_J(t).graph.n == expected

    def test_coupler_invariants(self):
        j = build_J(2)
        g = j.graph
        y, z = j.terminals["y"], j.terminals["z"]
        assert bipartition(g) is not None
        assert degeneracy_order(g)[0] == 2
        assert distance(g, y, z) == 6
        assert girth(g) == 8

    def test_leaves_glued_by_reversed_label(self):
        j = build_J(2)
        z = j.terminals["z"]
        for m1, m2, m3 in ((1, 1, 1), (3, 7, 2), (10, 10, 10), (5, 1, 9)):
            znode = z + 1 + 10 + (m1 - 1) * 10 + (m2 - 1)
            assert j.graph.has_edge(znode, tree_leaf(2, m3, m2, m1))

    def test_counting_check(self):
        c = counting_check_J(2)
        assert c == CountingCheck(2, 729, Fraction(500), True)
        c3 = counting_check_J(3)
        assert c3.lhs == 2197 and c3.rhs == Fraction(3375, 2) and c3.holds
        assert all(counting_check_J(t).holds for t in range(2, 1001))
        with pytest.raises(ValueError):
            counting_check_J(1)


class TestLinks:
    def test_distinct_link_shape(self):
        n = build_N(2)
        assert n.graph.n == 3 * 2**4 + 2
        assert n.graph.degree(n.terminals["y"]) == 24
        assert n.graph.degree(n.terminals["z"]) == 24
        assert bipartition(n.graph) is not None
        n3 = build_N(3)
        assert n3.graph.n == 3 * 3**4 + 2
        assert n3.graph.degree(n3.terminals["y"]) == 243 // 2
        assert n3.graph.degree(n3.terminals["z"]) == 243 // 2 + 1

    def test_distinct_link_forces_inequality(self):
        n = build_N(2)
        y, z = n.terminals["y"], n.terminals["z"]
        assert mc_decide(n.graph, 2, pins={y: 0, z: 0}).verdict == "no"
        assert mc_decide(n.graph, 2, pins={y: 0, z: 1}).verdict == "yes"

    def test_equalizer_shape(self):
        eq = build_equalizer(2)
        assert eq.graph.n == 5
        assert girth(eq.graph) == 4
        assert build_equalizer(3).graph.n == 2 + 2 * 3 * 2 - 1

    def test_equalizer_forces_equality_exhaustively(self):
        eq = build_equalizer(2)
        g, y, z = eq.graph, eq.terminals["y"], eq.terminals["z"]
        for bits in range(1 << g.n):
            coloring = {v: (bits >> v) & 1 for v in range(g.n)}
            report = audit(g, coloring, max_size=2)
            if report.ok:
                assert coloring[y] == coloring[z]
        assert mc_decide(g, 2, pins={y: 0, z: 1}).verdict == "no"
        assert mc_decide(g, 2, pins={y: 0, z: 0}).verdict == "yes"


class TestUncrosser:
    def test_structure(self):
        u = build_uncrosser(2)
        assert set(u.terminals) == {"x_N", "x_S", "x_W", "x_E", "x_C", "y_1", "y_2"}
        # 7 terminals, one pendant per y_i, three 50-vertex distinct-links
        # and three equalizers contributing internals only
        assert u.graph.n == 7 + 2 + 3 * 48 + 3 * 3
        assert euler_characteristic(u.embedding) == 2
        # x_C meets each y_i directly
        for name in ("y_1", "y_2"):
            assert u.graph.has_edge(u.terminals["x_C"], u.terminals[name])

    def test_validates(self):
        u = build_uncrosser(2)
        report = validate_uncrosser(u, 2)
        assert report.ok and report.verdict == "pass"
        assert report.counterexample is None
        t = u.terminals
        same, diff = report.same_witness, report.distinct_witness
        assert same[t["x_N"]] == same[t["x_W"]] == 0
        assert diff[t["x_N"]] == 0 and diff[t["x_W"]] == 1
        assert audit(u.graph, same, max_size=2).ok
        assert audit(u.graph, diff, max_size=2).ok

    def test_mutation_is_caught(self):
        u = build_uncrosser(2)
        x_s = u.terminals["x_S"]
        cut = Graph(u.graph.n, [e for e in u.graph.edges() if x_s not in e])
        report = validate_uncrosser(GadgetGraph(cut, u.terminals), 2)
        assert report.verdict == "fail"
        assert report.counterexample is not None
        assert report.counterexample[u.terminals["x_N"]] == 0
        assert report.counterexample[x_s] == 1
        assert audit(cut, report.counterexample, max_size=2).ok

    def test_zero_budget_inconclusive(self):
        u = build_uncrosser(2)
        assert validate_uncrosser(u, 2, budget=0).verdict == "inconclusive"


class TestGirth8Reduction:
    def test_one_hyperedge_shape(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        g = reduce_girth8(h, 2)
        assert g.graph.n == 3 + 3 + 3 * (1222 - 2)
        for v in range(3):
            assert g.terminals[f"v{v}"] == v
        assert girth(g.graph) == 8
        assert degeneracy_order(g.graph)[0] == 2

    def test_path_attachment(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        g = reduce_girth8(h, 2)
        # path vertex j couples to hyperedge vertex j mod 3, j counted from 1
        for j, target in ((1, 1), (2, 2), (3, 0)):
            ej = g.terminals[f"e0_{j}"]
            assert distance(g.graph, ej, target) == 6
        assert g.graph.has_edge(g.terminals["e0_1"], g.terminals["e0_2"])
        assert g.graph.has_edge(g.terminals["e0_2"], g.terminals["e0_3"])

    def test_forward_coloring(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        g = reduce_girth8(h, 2)
        coloring = forward_coloring_girth8(h, {0: 0, 1: 0, 2: 1}, g, 2)
        report = audit(g.graph, coloring, max_size=2)
        assert report.ok and report.max_component <= 2
        assert coloring[0] == 0 and coloring[2] == 1

    def test_forward_coloring_shared_vertices(self):
        h = Hypergraph3.from_edges(4, [(0, 1, 2), (1, 2, 3)])
        g = reduce_girth8(h, 2)
        hcol = hyper2color(h)
        coloring = forward_coloring_girth8(h, hcol, g, 2)
        assert audit(g.graph, coloring, max_size=2).ok

    def test_forward_coloring_rejects_bad_inputs(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        g = reduce_girth8(h, 2)
        with pytest.raises(ValueError):
            forward_coloring_girth8(h, {0: 1, 1: 1, 2: 1}, g, 2)
        with pytest.raises(ValueError):
            forward_coloring_girth8(h, {0: 0, 1: 0, 2: 1}, reduce_girth8(h, 3), 2)

    def test_k_validation(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        with pytest.raises(ValueError):
            reduce_girth8(h, 1)
        with pytest.raises(ValueError):
            reduce_planar(h, 1)


class TestPlanarReduction:
    def test_rejects_uncovered_vertex(self):
        h = Hypergraph3.from_edges(4, [(0, 1, 2)])
        with pytest.raises(ValueError, match="isolated"):
            reduce_planar(h, 2)

    def test_rejects_split_hypergraph(self):
        h = Hypergraph3.from_edges(6, [(0, 1, 2), (3, 4, 5)])
        with pytest.raises(ValueError, match="connected"):
            reduce_planar(h, 2)

    def test_one_hyperedge_crossing_free(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        g = reduce_planar(h, 2)
        # first-use primitive order nests the three connectors: no crossings,
        # so only three direct equalizers beyond primitives and the path
        assert g.graph.n == 3 + 3 + 3 * 3
        assert euler_characteristic(g.embedding) == 2
        assert not has_triangle(g.graph)
        assert degeneracy_order(g.graph)[0] == 2

    def test_small_instance_decides_colorability(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        g = reduce_planar(h, 2)
        assert mc_decide(g.graph, 2, pins={0: 0, 1: 0, 2: 0}).verdict == "no"
        assert mc_decide(g.graph, 2, pins={0: 0, 1: 0, 2: 1}).verdict == "yes"
        assert mc_decide(g.graph, 2).verdict == "yes"

    def test_two_hyperedges_use_uncrossers(self):
        h = Hypergraph3.from_edges(4, [(0, 1, 2), (1, 2, 3)])
        g = reduce_planar(h, 2)
        # 5 crossings under the fixed layout: 4 primitives, 6 path vertices,
        # five 162-vertex uncrossers, and 16 equalizer copies along the chains
        assert g.graph.n == 4 + 6 + 5 * 162 + 16 * 3
        assert euler_characteristic(g.embedding) == 2
        assert not has_triangle(g.graph)
        assert degeneracy_order(g.graph)[0] == 2
        for v in range(4):
            assert g.terminals[f"v{v}"] == v

    def test_planarity_helper(self):
        assert euler_characteristic(
            _planar_embedding(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
        ) == 2
        k5 = Graph(5, list(combinations(range(5), 2)))
        with pytest.raises(ValueError):
            _planar_embedding(k5)


class TestHypergraphOracle:
    def test_single_triple(self):
        h = Hypergraph3.from_edges(3, [(0, 1, 2)])
        coloring = hyper2color(h)
        assert coloring is not None
        assert len({coloring[v] for v in (0, 1, 2)}) == 2

    def test_complete_on_five(self):
        h = Hypergraph3.from_edges(
            5, [tuple(sorted(t)) for t in combinations(range(5), 3)]
        )
        assert hyper2color(h) is None

    def test_fano_plane(self):
        assert hyper2color(FANO) is None

    def test_fano_minus_line_colorable(self):
        h = Hypergraph3(7, FANO.edges[1:])
        coloring = hyper2color(h)
        assert coloring is not None
        for a, b, c in h.edges:
            assert len({coloring[a], coloring[b], coloring[c]}) == 2

    def test_size_cap(self):
        with pytest.raises(ValueError):
            hyper2color(Hypergraph3(31, ((0, 1, 2),)))
