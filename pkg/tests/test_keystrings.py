import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from topocode import topcode_matrix as tm
from topocode.constructors import tree_kd_coloring
from topocode.errors import TopocodeError
from topocode.graph_core import random_tree
from topocode.keystrings import (combine_strings, distinct_string_count, group_index,
                                 order_count_bound, permutation_from_index, rebuild_from_string,
                                 string_from_matrix, string_group_op, string_multiset_equal)
from topocode.topcode_matrix import TopcodeMatrix

small = st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12)),
                 min_size=1, max_size=2).map(TopcodeMatrix.from_columns)


@given(small)
@settings(max_examples=50, deadline=None)
def test_distinct_count_matches_brute_force(m):
    vals = [str(c) for row in m.rows() for c in row]
    brute = {"".join(p) for p in itertools.permutations(vals)}
    assert distinct_string_count(m) == len(brute)
    assert order_count_bound(m) >= len(brute)


@given(small, st.integers(0, 10 ** 6))
@settings(max_examples=50)
def test_any_order_is_a_rearrangement(m, seed):
    n = 3 * m.q
    idx = random.Random(seed).randrange(1, 2 ** 62) % order_count_bound(m)
    s = string_from_matrix(m, idx)
    assert string_multiset_equal(s, string_from_matrix(m))
    perm = permutation_from_index(idx, n)
    assert sorted(perm) == list(range(n))
    assert string_from_matrix(m, perm) == s


def test_permutation_index_order():
    assert [permutation_from_index(i, 3) for i in range(6)] == [list(p) for p in itertools.permutations(range(3))]
    with pytest.raises(TopocodeError):
        permutation_from_index(6, 3)


def test_string_needs_nonnegative_integers():
    with pytest.raises(TopocodeError):
        string_from_matrix(TopcodeMatrix.from_rows([-1], [1], [1]))
    with pytest.raises(TopocodeError):
        string_from_matrix(tm.parameterize(TopcodeMatrix.from_rows([1], [1], [1])))


def test_rebuild_small_string():
    res = rebuild_from_string("011", 1)
    assert not res.exhausted
    first = res.solutions[0]
    assert (first.matrix.X, first.matrix.E, first.matrix.Y) == ((0,), (1,), (1,))
    assert (first.k0, first.d0) == (1, 1)
    for sol in res.solutions:
        assert string_from_matrix(sol.matrix) == "011"
        assert sol.k0 >= 0 and sol.d0 >= 1


@pytest.mark.parametrize("seed", range(6))
def test_rebuild_finds_the_generating_matrix(seed):
    rng = random.Random(seed)
    t = random_tree(rng.randint(2, 4), rng)
    k, d = rng.randint(0, 9), rng.randint(1, 9)
    f = tree_kd_coloring(t, "graceful", k, d)
    m = tm.from_colored_graph(t, f)
    s = string_from_matrix(m)
    res = rebuild_from_string(s, m.q, realize=False)
    assert not res.exhausted
    assert any(sol.matrix == m and (sol.k0, sol.d0) == (k, d) for sol in res.solutions)
    assert all(string_from_matrix(sol.matrix) == s for sol in res.solutions)


def test_rebuild_budget_and_errors():
    res = rebuild_from_string("1234567890", 3, budget=5, realize=False)
    assert res.exhausted
    with pytest.raises(TopocodeError):
        rebuild_from_string("12a", 1)
    with pytest.raises(TopocodeError):
        rebuild_from_string("123", 1, family="6C")


def test_string_groups():
    S = ["1234", "2341", "3412", "4123"]
    assert group_index(1, 3, 2, 4) == 2
    assert group_index(1, 1, 2, 4, "sub") == 2
    assert combine_strings("12", "34", "11", 10) == "35"
    assert string_group_op(S, 1, 1, 1, 10) == S[0]
    with pytest.raises(TopocodeError):
        combine_strings("1", "12", "1", 10)
    with pytest.raises(TopocodeError):
        string_group_op(S, 9, 1, 1, 10)
