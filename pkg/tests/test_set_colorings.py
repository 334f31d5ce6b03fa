import random

import pytest
from hypothesis import given, settings, strategies as st

from topocode.constructors import find_set_ordered_graceful
from topocode.errors import TopocodeError
from topocode.graph_core import Graph, complete_graph, cycle_graph, path_graph, random_tree
from topocode.linform import LinForm
from topocode.set_colorings import (SET_CONSTRAINTS, SET_FAMILIES, SetColoring, extract_hypergraph,
                                    graph_kd_total_set_coloring, lift_kd, labeled_tree_set_coloring, peel_set_coloring,
                                    verify_set_coloring)

K = lambda j: LinForm(1, j)
D = lambda j: LinForm(0, j)


def caterpillar(rng):
    spine = rng.randint(2, 5)
    edges = [(i, i + 1) for i in range(spine - 1)]
    p = spine
    for _ in range(rng.randint(0, 5)):
        edges.append((rng.randrange(spine), p))
        p += 1
    return Graph.make(p, edges)


def labeled_caterpillar(seed):
    g = caterpillar(random.Random(seed))
    lab = find_set_ordered_graceful(g).labeling
    return g, lab


def test_single_edge_center_is_the_later_vertex():
    sc = peel_set_coloring(path_graph(2), [0, 1])
    assert sc.vertex(0) == {0, 1} and sc.vertex(1) == {1}
    assert sc.edge(0, 1) == {1}


def test_peel_set_coloring_needs_distinct_labels_and_tree():
    with pytest.raises(TopocodeError):
        peel_set_coloring(path_graph(3), [0, 0, 1])
    with pytest.raises(TopocodeError):
        peel_set_coloring(cycle_graph(4), [0, 1, 2, 3])


trees = st.builds(lambda n, s: random_tree(n, random.Random(s)), st.integers(2, 14), st.integers(0, 10 ** 6))


@given(trees, st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_peel_set_coloring_structure(t, seed):
    labels = list(range(t.p))
    random.Random(seed).shuffle(labels)
    sc = peel_set_coloring(t, labels)
    singles = [v for v, s in sc.vertex_sets.items() if len(s) == 1]
    assert len(singles) == 1
    assert all(1 <= len(s) <= 2 and labels[v] in s for v, s in sc.vertex_sets.items())
    rep = verify_set_coloring(t, sc, ["all-covered", "adjacent-vertex-sets-differ", "end-sets-meet", "end-intersection-in-edge"])
    assert rep.passed, rep.violations


@pytest.mark.parametrize("seed", range(25))
def test_ordered_path_variant_on_set_ordered_labelings(seed):
    g, lab = labeled_caterpillar(seed)
    sc = labeled_tree_set_coloring(g, lab.coloring, "ordered-path")
    singles = [v for v, s in sc.vertex_sets.items() if len(s) == 1]
    assert len(singles) == 1
    assert all(len(s) == 2 for v, s in sc.vertex_sets.items() if v not in singles)
    for u, v in g.edges:
        assert len(sc.vertex(u) & sc.vertex(v)) == 1
        assert len(sc.edge(u, v)) >= 2


@pytest.mark.parametrize("variant", ["peel", "neighbors", "incident-edges", "neighbors-and-edges"])
@pytest.mark.parametrize("seed", range(8))
def test_other_variants_cover_end_sets(variant, seed):
    g, lab = labeled_caterpillar(seed)
    sc = labeled_tree_set_coloring(g, lab.coloring, variant)
    rep = verify_set_coloring(g, sc, ["all-covered", "ground-set-covered"])
    assert rep.passed
    if variant == "neighbors":
        assert all(sc.vertex(x) == {lab.label(y) for y in g.neighbors(x)} for x in range(g.p))


def test_variant_preconditions():
    with pytest.raises(TopocodeError):
        labeled_tree_set_coloring(path_graph(3), [0, 0, 1], "neighbors")
    with pytest.raises(TopocodeError):
        labeled_tree_set_coloring(path_graph(3), [0, 1, 2], "incident-edges")  # both edge differences are 1
    with pytest.raises(TopocodeError):
        labeled_tree_set_coloring(path_graph(3), [0, 1, 2], "Z")


def test_lift_by_value_origin():
    sc = SetColoring({0: {0, 5}, 1: {5}}, {(0, 1): {5}}, frozenset({0}))
    lifted = lift_kd(sc)
    assert lifted.vertex(0) == {D(0), K(5)}
    assert lift_kd(sc, 0, 1).vertex(0) == {0, 5}
    assert lift_kd(sc, 2, 3).vertex(0) == {0, 17}
    with pytest.raises(TopocodeError):
        lift_kd(SetColoring({0: {1}}))


def test_hypergraph_extraction():
    sc = SetColoring({0: {1, 2}, 1: {2}, 2: {1, 2}}, {(0, 1): {2}, (1, 2): {2}})
    h = extract_hypergraph(sc, "vertices")
    assert h.ground == {1, 2} and len(h.edges) == 2 and h.valid
    assert extract_hypergraph(sc, "total").edges == h.edges
    with pytest.raises(TopocodeError):
        extract_hypergraph(SetColoring({0: set()}), "vertices")
    with pytest.raises(TopocodeError):
        extract_hypergraph(sc, "nope")


def test_json_round_trip():
    sc = SetColoring({0: {D(0), K(5)}, 1: {K(5)}}, {(0, 1): {K(5)}}, frozenset({D(0)}), {0: 1, 1: 1})
    back = SetColoring.from_json(sc.to_json())
    assert back == sc


def test_constraint_checks_on_hand_examples():
    g = path_graph(3)
    sc = SetColoring({0: {1}, 1: {1, 2}, 2: {3}}, {(0, 1): {1}, (1, 2): {2, 3}})
    rep = verify_set_coloring(g, sc, SET_CONSTRAINTS)
    assert rep.checks["adjacent-vertex-sets-differ"] and not rep.checks["end-sets-meet"]
    assert not rep.checks["edge-set-differs-from-ends"]  # edge 0-1 repeats the set of vertex 0
    assert rep.checks["adjacent-edge-sets-disjoint"] and not rep.checks["adjacent-edge-sets-meet"]
    assert not rep.passed
    with pytest.raises(TopocodeError):
        verify_set_coloring(g, sc, ["bogus"])


def k4_example():
    e = {1: {D(0), D(2), K(3)}, 2: {D(0), D(1), D(3), D(4), K(2), K(4), K(5)},
         3: {D(0), D(2), D(3), K(3), K(4), K(5)}, 4: {D(1), D(2), K(3), K(4)},
         5: {D(0), K(0), K(2), K(5)}, 6: {K(1), K(3), K(4)}, 7: {K(2), K(3), K(4)},
         8: {K(0), K(5)}, 9: {D(1), K(2), K(3), K(5)}, 10: {K(1), K(4)}}
    edges = {(0, 1): e[5], (0, 2): e[6], (0, 3): e[7], (1, 2): e[8], (1, 3): e[9], (2, 3): e[10]}
    return complete_graph(4), SetColoring({i: e[i + 1] for i in range(4)}, edges)


@pytest.mark.parametrize("family,constant", [
    ("felicitous-difference", D(2)), ("edge-magic", LinForm(2, 7)),
    ("edge-difference", LinForm(2, 5)), ("graceful-difference", D(1)),
    ("graceful", None), ("harmonious", None)])
def test_k4_witnesses(family, constant):
    g, sc = k4_example()
    magic = (family, constant) if constant is not None else None
    rep = verify_set_coloring(g, sc, [family], magic=magic)
    assert rep.passed, rep.violations
    assert set(rep.witnesses[family]) == set(g.edges)


def test_k4_witness_fails_for_a_wrong_constant():
    g, sc = k4_example()
    assert not verify_set_coloring(g, sc, ["edge-magic"], magic=("edge-magic", LinForm(5, 0))).passed


def test_numeric_mode_matches_symbolic_on_k4():
    g, sc = k4_example()
    num = SetColoring({v: {c.evaluate(20, 1) for c in s} for v, s in sc.vertex_sets.items()},
                      {e: {c.evaluate(20, 1) for c in s} for e, s in sc.edge_sets.items()})
    assert verify_set_coloring(g, num, ["graceful"], k=20, d=1).passed


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(5), complete_graph(5), cycle_graph(6)])
@pytest.mark.parametrize("seed", [0, 3])
def test_connected_graphs_get_all_six_witnesses(g, seed):
    r = graph_kd_total_set_coloring(g, seed)
    checks = r.check(g)
    assert set(checks) == set(SET_FAMILIES) and all(checks.values())
    assert all(r.coloring.edge(u, v) for u, v in g.edges)


def test_graph_set_coloring_needs_connected():
    with pytest.raises(TopocodeError):
        graph_kd_total_set_coloring(Graph.make(4, [(0, 1), (2, 3)]))
