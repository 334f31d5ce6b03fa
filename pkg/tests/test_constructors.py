import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from topocode.coloring_engine import FamilySpec, verify
from topocode.constructors import (LEAF_ADDING_FAMILIES, TREE_FAMILIES, ChoiceVector, SetOrderedGraceful,
                                   build_graph_book, choice_length, color_complete_bipartite,
                                   find_set_ordered_graceful, flawed_forest_labeling, leaf_added_coloring,
                                   tree_kd_coloring)
from topocode.errors import TopocodeError
from topocode.graph_core import (Graph, LeafPlan, complete_bipartite, cycle_graph, path_graph,
                                 random_tree, star_graph)
from topocode.linform import LinForm


def brute_set_ordered_graceful(g):
    """Any labeling into [0, q] with edge differences 1..q and max f(X) < min f(Y) for a side X."""
    X, Y = g.two_coloring()
    for labels in itertools.permutations(range(g.q + 1), g.p):
        if sorted(abs(labels[u] - labels[v]) for u, v in g.edges) != list(range(1, g.q + 1)):
            continue
        for A, B in ((X, Y), (Y, X)):
            if max(labels[v] for v in A) < min(labels[v] for v in B):
                return True
    return False


small_trees = st.builds(lambda n, s: random_tree(n, random.Random(s)), st.integers(2, 6), st.integers(0, 10 ** 6))


@given(small_trees)
@settings(max_examples=40, deadline=None)
def test_search_agrees_with_brute_force(t):
    res = find_set_ordered_graceful(t)
    assert res.status in ("found", "nonexistent")
    assert (res.status == "found") == brute_set_ordered_graceful(t)
    if res.labeling is not None:
        res.labeling.check(t)


def test_search_on_non_bipartite_and_budget():
    assert find_set_ordered_graceful(cycle_graph(5)).status == "nonexistent"
    big = random_tree(12, random.Random(3))
    assert find_set_ordered_graceful(big, budget=1).status in ("unknown", "found")
    with pytest.raises(TopocodeError):
        find_set_ordered_graceful(Graph.make(4, [(0, 1), (2, 3)]))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (3, 3), (4, 2)])
@pytest.mark.parametrize("kd", [("sym", "sym"), (1, 1), (3, 2)])
def test_complete_bipartite(m, n, kd):
    g, f = color_complete_bipartite(m, n, *kd)
    assert verify(g, f, "graceful", *kd).passed
    assert g.q == m * n


def test_k23_from_formula():
    g, f = color_complete_bipartite(2, 3, 1, 1)
    assert sorted(f.vertex_colors[v] for v in range(2)) == [0, 1]
    assert sorted(f.vertex_colors[v] for v in range(2, 5)) == [2, 4, 6]


@given(st.integers(3, 14), st.integers(0, 10 ** 6), st.sampled_from(TREE_FAMILIES))
@settings(max_examples=60, deadline=None)
def test_tree_colorings_verify(n, seed, fam):
    t = random_tree(n, random.Random(seed))
    f = tree_kd_coloring(t, fam)
    assert verify(t, f, fam).passed
    assert sorted(f.edge_colors.values()) == [LinForm(1, i) for i in range(t.q)]


@pytest.mark.parametrize("seed", range(5))
def test_every_choice_vector_gives_a_distinct_coloring(seed):
    t = random_tree(11, random.Random(seed))
    m = choice_length(t)
    seen = set()
    for cv in ChoiceVector.every(m):
        f = tree_kd_coloring(t, "graceful", choices=cv)
        assert verify(t, f, "graceful").passed
        seen.add(f)
    assert len(seen) == 2 ** m


def test_choice_vector_parsing_and_length_errors():
    assert str(ChoiceVector.parse("1011")) == "1011"
    with pytest.raises(TopocodeError):
        ChoiceVector.parse("12")
    t = path_graph(7)
    with pytest.raises(TopocodeError):
        tree_kd_coloring(t, "graceful", choices="1" * (choice_length(t) + 1))


def test_constructor_errors():
    with pytest.raises(TopocodeError):
        tree_kd_coloring(cycle_graph(4), "graceful")
    with pytest.raises(TopocodeError):
        tree_kd_coloring(path_graph(4), "nope")


def caterpillar(spine, legs, rng):
    edges = [(i, i + 1) for i in range(spine - 1)]
    p = spine
    for _ in range(legs):
        edges.append((rng.randrange(spine), p))
        p += 1
    return Graph.make(p, edges)


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("fam", LEAF_ADDING_FAMILIES)
def test_leaf_added_coloring_verifies(seed, fam):
    rng = random.Random(seed)
    g = caterpillar(rng.randint(2, 5), rng.randint(0, 4), rng)
    base = find_set_ordered_graceful(g).labeling
    plan = LeafPlan.random(g, rng.randint(1, 6), seed)
    h, f = leaf_added_coloring(g, base, plan, family=fam)
    assert h.p == g.p + plan.total
    rep = verify(h, f, FamilySpec(fam, constant=f.constant))
    assert rep.passed, rep.violations


def test_flawed_forest():
    trees = [path_graph(3), star_graph(3), path_graph(4)]
    labs = [find_set_ordered_graceful(t).labeling for t in trees]
    forest, f = flawed_forest_labeling(trees, labs)
    vals = list(f.vertex_colors.values())
    assert len(set(vals)) == len(vals)
    assert len(set(f.edge_colors.values())) == forest.q
    X = f.x_side
    assert max(f.vertex_colors[v] for v in X) < min(f.vertex_colors[v] for v in range(forest.p) if v not in X)
    assert all(c == abs(f.vertex_colors[u] - f.vertex_colors[v]) for (u, v), c in f.edge_colors.items())


def test_graph_book_is_graceful():
    pages = [color_complete_bipartite(2, n) for n in (3, 2, 1)]
    book, f = build_graph_book(pages)
    assert book.q == 12 and book.p == 2 + 6
    assert verify(book, f, "graceful").passed


def test_graph_book_spine_mismatch():
    with pytest.raises(TopocodeError):
        build_graph_book([color_complete_bipartite(2, 2), color_complete_bipartite(3, 1)])


def test_set_ordered_check_rejects_bad_labels():
    g = path_graph(3)
    with pytest.raises(TopocodeError):
        SetOrderedGraceful.from_labels(g, [0, 1, 2], {0, 2}).check(g)
