import math
import random
import time
from collections import Counter

import networkx as nx
import pytest

from topocode import topcode_matrix as tm
from topocode.coloring_engine import FamilySpec, derive_equivalent, verify
from topocode.constructors import (LEAF_ADDING_FAMILIES, TREE_FAMILIES, ChoiceVector, choice_length,
                                   find_set_ordered_graceful, leaf_added_coloring, tree_kd_coloring)
from topocode.graph_core import (Graph, LeafPlan, count_partitions, leaf_count_identity,
                                 random_tree)
from topocode.groups_homo import MatrixGroup, build_every_zero_family, group_add, group_sub
from topocode.keystrings import rebuild_from_string, string_from_matrix
from topocode.linform import LinForm
from topocode.set_colorings import extract_hypergraph, lift_kd, peel_set_coloring
from topocode.topcode_matrix import TopcodeMatrix
from topocode.total_coloring import TotalColoring

K = lambda j: LinForm(1, j)
D = lambda j: LinForm(0, j)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.p))
    h.add_edges_from(g.edges)
    return h


# 1 ---------------------------------------------------------------- exact strings

def test_exact_strings(report):
    g2 = TopcodeMatrix.from_rows([11, 11, 11, 11, 44, 44], [76, 52, 47, 33, 21, 31],
                                 [87, 63, 58, 44, 23, 13])
    para = TopcodeMatrix.from_rows([D(2), D(1), D(1), D(1), D(1), D(0), D(0)],
                                   [K(i) for i in range(1, 8)],
                                   [K(3), K(3), K(4), K(5), K(6), K(6), K(7)])
    start = time.perf_counter()
    runs = 100
    for _ in range(runs):
        s1 = string_from_matrix(g2)
        s2 = string_from_matrix(tm.evaluate(para, 7, 5))
    per_call = (time.perf_counter() - start) / runs
    ok = (s1 == "111111114444765247332131876358442313" and len(s1) == 36
          and s2 == "105555001217222732374222222732373742" and per_call < 1e-3)
    report(1, ok, f"strings match, {per_call * 1e6:.0f} us per pair")


# 2 ---------------------------------------------------------------- instantiation

def test_parameter_instantiation(report):
    base = TopcodeMatrix.from_rows([3, 3, 2, 3, 3, 2, 2, 0, 0, 0], list(range(10)),
                                   [3, 4, 4, 6, 7, 7, 8, 7, 8, 9])
    printed = TopcodeMatrix.from_rows(
        [D(3), D(3), D(2), D(3), D(3), D(2), D(2), D(0), D(0), D(0)],
        [K(i) for i in range(10)],
        [K(3), K(4), K(4), K(6), K(7), K(7), K(8), K(7), K(8), K(9)])
    target = TopcodeMatrix.from_rows([6, 6, 4, 6, 6, 4, 4, 0, 0, 0], list(range(1, 20, 2)),
                                     [7, 9, 9, 13, 15, 15, 17, 15, 17, 19])
    p = tm.parameterize(base)
    ok = p == printed and tm.evaluate(p, 1, 2) == target
    report(2, ok, "parameterized base at (1,2) equals the integer matrix entrywise")


# 3 ---------------------------------------------------------------- constructor soundness

def test_constructor_soundness(report):
    start = time.perf_counter()
    failures = []
    checked = 0
    for seed in range(300):
        rng = random.Random(seed)
        t = random_tree(rng.randint(2, 14), rng)
        for fam in TREE_FAMILIES:
            for k, d in ((1, 1), (1, 2), (3, 2), ("sym", "sym")):
                f = tree_kd_coloring(t, fam, k, d)
                rep = verify(t, f, fam, k, d)
                if k == "sym":
                    want = [K(i) for i in range(t.q)]
                else:
                    want = [k + i * d for i in range(t.q)]
                if not rep.passed or sorted(f.edge_colors.values()) != want:
                    failures.append((seed, fam, k, d))
                checked += 1
    elapsed = time.perf_counter() - start
    report(3, not failures and elapsed < 60, f"{checked} colorings, {len(failures)} failures, {elapsed:.1f} s")


# 4 ---------------------------------------------------------------- 2^m multiplicity

def tree_with_diameter(D_, rng):
    edges = [(i, i + 1) for i in range(D_)]
    p = D_ + 1
    for _ in range(rng.randint(0, 5)):
        host = rng.randint(1, D_ - 1)
        edges.append((host, p))
        p += 1
    return Graph.make(p, edges)


def test_choice_vector_multiplicity(report):
    details = []
    ok = True
    for D_ in (4, 5, 6, 7):
        for seed in range(5):
            t = tree_with_diameter(D_, random.Random(100 * D_ + seed))
            diam = nx.diameter(to_nx(t))
            m = choice_length(t)
            colorings = set()
            for cv in ChoiceVector.every(m):
                f = tree_kd_coloring(t, "graceful", choices=cv)
                if not verify(t, f, "graceful").passed:
                    ok = False
                colorings.add(f)
            if diam != D_ or m + 1 != math.ceil(D_ / 2) or len(colorings) < 2 ** m:
                ok = False
        details.append(f"D={D_}: m={m}, {len(colorings)} distinct")
    report(4, ok, "; ".join(details))


# 5 ---------------------------------------------------------------- equivalence constants

def kd_from_labeling(g, lab):
    """Graceful (k,d)-total coloring from a set-ordered graceful labeling with min label 0 on X."""
    X = lab.X
    vc = {v: D(lab.label(v)) if v in X else K(lab.label(v) - 1) for v in range(g.p)}
    ec = {e: K(c - 1) for e, c in lab.coloring.edge_colors.items()}
    return TotalColoring(vc, ec, "graceful", frozenset(X))


def set_ordered_trees(count, seed0):
    out = []
    seed = seed0
    while len(out) < count:
        rng = random.Random(seed)
        seed += 1
        t = random_tree(rng.randint(2, 9), rng)
        res = find_set_ordered_graceful(t)
        if res.status == "found":
            out.append((t, res.labeling))
    return out


def test_equivalence_constants(report):
    bad = []
    for t, lab in set_ordered_trees(100, 0):
        f = kd_from_labeling(t, lab)
        q = t.q
        X = sorted(f.x_side)
        Y = [v for v in range(t.p) if v not in f.x_side]
        f_xs = max((f.vertex_colors[v] for v in X))
        f_y1 = min((f.vertex_colors[v] for v in Y))
        expected = {"edge-magic": K(q - 1) + K(0) + f_xs, "edge-difference": LinForm(2, q - 1),
                    "felicitous-difference": f_y1 - K(0), "graceful-difference": D(0)}
        for fam in ("edge-magic", "edge-difference", "graceful-difference",
                    "felicitous-difference", "harmonious", "edge-antimagic"):
            g = derive_equivalent(f, t, fam)
            if not verify(t, g, FamilySpec(fam)).passed:
                bad.append((fam, "verify"))
            if fam in expected and g.constant != expected[fam]:
                bad.append((fam, g.constant, expected[fam]))
            if fam == "harmonious" and sorted(g.edge_colors.values()) != [K(i) for i in range(q)]:
                bad.append((fam, "edge set"))
            if fam == "edge-antimagic":
                for (u, v), c in f.edge_colors.items():
                    val = g.vertex_colors[u] + g.edge_colors[(u, v)] + g.vertex_colors[v]
                    if val != LinForm(4, 2 * (q - 1)) - 2 * c:
                        bad.append((fam, (u, v)))
    report(5, not bad, f"100 trees x 6 targets, {len(bad)} mismatches")


# 6 ---------------------------------------------------------------- leaf-adding constants

def test_leaf_adding_constants(report):
    bad = []
    pairs = set_ordered_trees(100, 10_000)
    for i, (g, lab) in enumerate(pairs):
        plan = LeafPlan.random(g, random.Random(i).randint(1, 8), i)
        m = plan.total
        q = g.q
        fx = [lab.label(v) for v in lab.X]
        fy = [lab.label(v) for v in range(g.p) if v not in lab.X]
        M_ed = q + min(fy) - max(fx)
        expected = {
            "graceful-difference": D(min(fy) - max(fx) - 1),
            "edge-difference": 2 * (K(0) - D(1)) + D(M_ed + m),
            "felicitous-difference": D(max(fx) + m),
            "edge-magic": LinForm(2, 0) + D(max(fx) + q + 2 * m - 1),
        }
        for fam in LEAF_ADDING_FAMILIES:
            h, f = leaf_added_coloring(g, lab, plan, family=fam)
            if f.constant != expected[fam]:
                bad.append((i, fam, f.constant, expected[fam]))
            if not verify(h, f, FamilySpec(fam, constant=expected[fam])).passed:
                bad.append((i, fam, "verify"))
    report(6, not bad, f"100 pairs x 4 algorithms, {len(bad)} mismatches")


# 7 ---------------------------------------------------------------- group laws

def group_laws_hold(G):
    n = G.m
    for z in range(1, n + 1):
        for i in range(1, n + 1):
            if group_add(G, i, z, z) != i or group_sub(G, i, z, z) != i:
                return False
            for j in range(1, n + 1):
                lam = group_add(G, i, j, z)
                if group_sub(G, lam, j, z) != i:
                    return False
    return True


def test_group_laws(report):
    stars = MatrixGroup([TopcodeMatrix.from_rows([1, 1, 1], [3, 4, 5], [2, 3, 4]),
                         TopcodeMatrix.from_rows([2, 2, 2], [5, 6, 3], [3, 4, 1]),
                         TopcodeMatrix.from_rows([3, 3, 3], [7, 4, 5], [4, 1, 2]),
                         TopcodeMatrix.from_rows([4, 4, 4], [5, 6, 7], [1, 2, 3])], 4, "sum")
    ok = group_laws_hold(stars) and group_add(stars, 1, 3, 2) == 2
    families = 1
    rng = random.Random(7)
    fns = {"sum": lambda a, b, M: a + b, "abs-difference": lambda a, b, M: abs(a - b),
           "sum-mod": lambda a, b, M: (a + b - 1) % M + 1}
    for M in range(1, 9):
        for name, fn in fns.items():
            for _ in range(5):
                q = rng.randint(1, 4)
                X = [rng.randint(1, M) for _ in range(q)]
                Y = [rng.randint(1, M) for _ in range(q)]
                base = TopcodeMatrix.from_rows(X, [fn(a, b, M) for a, b in zip(X, Y)], Y)
                G = build_every_zero_family(base, M, name)
                ok = ok and group_laws_hold(G)
                families += 1
    report(7, ok, f"star family plus {families - 1} generated families, exhaustive index triples")


# 8 ---------------------------------------------------------------- matrix identities

def cols(m):
    return Counter(m.columns())


def identities_hold(a, b):
    return (cols(tm.subtract(tm.union_sum(a, b), b)) == cols(a)
            and cols(tm.union(a, b)) == cols(tm.union_sum(tm.union_sum(tm.subtract(a, tm.intersect(a, b)),
                                                                      tm.subtract(b, tm.intersect(a, b))),
                                                          tm.intersect(a, b))))


def test_matrix_identities(report):
    A = TopcodeMatrix.from_rows([7, 5, 7, 1], [1, 3, 5, 7], [18, 18, 14, 18])
    B = TopcodeMatrix.from_rows([7, 1, 5], [1, 7, 9], [18, 18, 12])
    printed = (cols(tm.union(A, B)) == cols(TopcodeMatrix.from_rows([7, 5, 7, 1, 5], [1, 3, 5, 7, 9], [18, 18, 14, 18, 12]))
               and cols(tm.intersect(A, B)) == cols(TopcodeMatrix.from_rows([7, 1], [1, 7], [18, 18]))
               and cols(tm.subtract(A, tm.intersect(A, B))) == cols(TopcodeMatrix.from_rows([5, 7], [3, 5], [18, 14]))
               and cols(tm.subtract(B, tm.intersect(A, B))) == cols(TopcodeMatrix.from_rows([5], [9], [12])))
    ok = printed and identities_hold(A, B)
    rng = random.Random(8)
    for _ in range(500):
        pair = []
        for _ in range(2):
            q = rng.randint(1, 6)
            pair.append(TopcodeMatrix.from_columns(
                [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(q)]))
        ok = ok and identities_hold(*pair)
    report(8, ok, "worked pair plus 500 random pairs")


# 9 ---------------------------------------------------------------- set-coloring reproduction

def test_set_coloring_reproduction(report):
    # x1..x5 are vertices 0..4 (labels 0..4), y1..y7 are vertices 5..11
    edges = [(0, 5), (1, 5), (2, 5), (2, 6), (2, 7), (2, 8), (2, 10), (3, 8), (3, 9), (4, 10), (4, 11)]
    t = Graph.make(12, edges)
    labels = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 10]
    sc = peel_set_coloring(t, labels)
    g_sets = [{0, 5}, {1, 5}, {2}, {3, 8}, {4, 11}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 9}, {2, 11}, {4, 10}]
    z_sets = [{5}, {5}, {2}, {2}, {2}, {2}, {2}, {8}, {3}, {11}, {4}]
    ok = all(sc.vertex(v) == s for v, s in enumerate(g_sets))
    ok = ok and all(sc.edge(*e) == s for e, s in zip(edges, z_sets))
    lifted = lift_kd(sc)
    hyper = {frozenset(s) for s in [
        {D(0), K(5)}, {D(1), K(5)}, {D(2)}, {D(3), K(8)}, {D(4), K(11)},
        {D(2), K(5)}, {D(2), K(6)}, {D(2), K(7)}, {D(2), K(8)}, {D(3), K(9)},
        {D(2), K(11)}, {D(4), K(10)}]}
    ok = ok and lifted.vertex(0) == {D(0), K(5)}
    h = extract_hypergraph(lifted, "vertices")
    ok = ok and len(h.edges) == 12 and set(h.edges) == hyper and h.valid
    report(9, ok, f"vertex and edge sets match, {len(h.edges)} hyperedges")


# 10 ---------------------------------------------------------------- reconstruction loop

def test_reconstruction_closed_loop(report):
    misses = false_positives = 0
    worst = 0
    for i in range(50):
        rng = random.Random(i)
        t = random_tree(rng.randint(2, 4), rng)
        k, d = rng.randint(1, 9), rng.randint(1, 9)
        cv = ChoiceVector(tuple(rng.randint(0, 1) for _ in range(choice_length(t))))
        m = tm.from_colored_graph(t, tree_kd_coloring(t, "graceful", k, d, cv))
        s = string_from_matrix(m)
        res = rebuild_from_string(s, m.q, "graceful", budget=1_000_000, realize=False)
        worst = max(worst, res.steps)
        if res.exhausted or not any(sol.matrix == m and (sol.k0, sol.d0) == (k, d) for sol in res.solutions):
            misses += 1
        false_positives += sum(1 for sol in res.solutions if string_from_matrix(sol.matrix) != s)
    report(10, misses == 0 and false_positives == 0,
           f"50 matrices, {misses} misses, {false_positives} false positives, at most {worst} checks")


# 11 ---------------------------------------------------------------- combinatorics oracles

def brute_partitions(m, k):
    count = 0
    stack = [(m, k)]
    while stack:
        rest, largest = stack.pop()
        if rest == 0:
            count += 1
            continue
        for part in range(1, min(rest, largest) + 1):
            stack.append((rest - part, part))
    return count


def test_combinatorics_oracles(report):
    ok = all(count_partitions(m, k) == brute_partitions(m, k) for m in range(31) for k in range(9))
    rng = random.Random(11)
    for _ in range(1000):
        t = random_tree(rng.randint(2, 40), rng)
        n1, rhs = leaf_count_identity(t)
        ok = ok and n1 == rhs == sum(1 for v in range(t.p) if t.degree(v) == 1)
    report(11, ok, "partition counts for m <= 30, k <= 8; leaf identity on 1000 trees")
