"""Constructive (k,d)-total colorings: complete bipartite graphs, trees, leaf-added graphs, forests and books."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .coloring_engine import FamilySpec, derive_equivalent, verify
from .errors import TopocodeError
from .graph_core import Graph, LeafPlan, add_leaves, complete_bipartite, peel_leaves
from .linform import LinForm, ZERO
from .topcode_matrix import entry_key
from .total_coloring import TotalColoring, edge_key

TREE_FAMILIES = ("graceful", "harmonious", "edge-difference", "graceful-difference",
                 "felicitous-difference", "edge-magic")
LEAF_ADDING_FAMILIES = ("graceful-difference", "edge-difference", "felicitous-difference", "edge-magic")

K = LinForm(1, 0)


def _kd(j: int) -> LinForm:
    return LinForm(1, j)


def _dd(j: int) -> LinForm:
    return LinForm(0, j)


def _finish(f: TotalColoring, k, d) -> TotalColoring:
    if k == "sym" and d == "sym":
        return f
    return f.evaluate(int(k), int(d))


# ---------------------------------------------------------------- choice vectors

@dataclass(frozen=True)
class ChoiceVector:
    """One bit per leaf-adding level, applied from the innermost star outward; 0 = SL, 1 = LS."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise TopocodeError("bad-parameters", "choice bits must be 0 or 1")

    @classmethod
    def parse(cls, text: str) -> "ChoiceVector":
        text = text.strip()
        if text and set(text) - {"0", "1"}:
            raise TopocodeError("parse-error", f"bad choice string {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def every(cls, m: int):
        for bits in product((0, 1), repeat=m):
            yield cls(bits)

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "".join(map(str, self.bits))


def choice_length(t: Graph) -> int:
    """Number of leaf-adding levels for a tree: ceil(D/2) - 1."""
    return len(peel_leaves(t)) - 1


def _bits_for(choices, m: int) -> tuple[int, ...]:
    if choices is None:
        return (0,) * m
    if isinstance(choices, str):
        choices = ChoiceVector.parse(choices)
    bits = choices.bits if isinstance(choices, ChoiceVector) else tuple(choices)
    if len(bits) != m:
        raise TopocodeError("bad-parameters", f"expected {m} choice bits, got {len(bits)}")
    return bits


# ---------------------------------------------------------------- complete bipartite

def color_complete_bipartite(m: int, n: int, k="sym", d="sym") -> tuple[Graph, TotalColoring]:
    """Graceful coloring of K_{m,n}: x_j -> (j-1)d, y_i -> k+(mi-1)d, x_j y_i -> k+(mi-j)d."""
    if m < 1 or n < 1:
        raise TopocodeError("bad-parameters", "need m, n >= 1")
    g = complete_bipartite(m, n)
    vc, ec = {}, {}
    for j in range(1, m + 1):
        vc[j - 1] = _dd(j - 1)
    for i in range(1, n + 1):
        vc[m + i - 1] = _kd(m * i - 1)
        for j in range(1, m + 1):
            ec[edge_key(j - 1, m + i - 1)] = _kd(m * i - j)
    f = TotalColoring(vc, ec, "graceful", frozenset(range(m)))
    return g, _finish(f, k, d)


# ---------------------------------------------------------------- trees

def _side_of(t: Graph, root: int) -> frozenset:
    dist = t.distances_from(root)
    return frozenset(v for v, dv in enumerate(dist) if dv % 2 == 0)


def _levels(t: Graph):
    """(star vertices, center, then per level the {parent: [new leaves]} maps, outermost last)."""
    trace = peel_leaves(t)
    core = sorted(trace.steps[-1].vertices)
    center = max(core, key=lambda v: (sum(1 for w in t.neighbors(v) if w in trace.steps[-1].vertices), -v))
    levels = []
    for step in reversed(trace.steps[:-1]):
        kept = step.vertices - step.removed
        attach = {}
        for leaf in sorted(step.removed):
            parent = next(w for w in t.neighbors(leaf) if w in kept)
            attach.setdefault(parent, []).append(leaf)
        levels.append(attach)
    return core, center, levels


def _star_seed(t: Graph, core, center):
    vc = {center: ZERO}
    ec = {}
    for j, v in enumerate(w for w in core if w != center):
        vc[v] = _kd(j)
        ec[edge_key(center, v)] = _kd(j)
    return vc, ec


def _parents(attach, X, vc):
    key = lambda v: (entry_key(vc[v]), v)
    xs = sorted((v for v in attach if v in X), key=key)
    ys = sorted((v for v in attach if v not in X), key=key)
    return xs, ys


def _slots(attach, parents):
    return [(p, leaf) for p in parents for leaf in attach[p]]


def _graceful_tree(t: Graph, bits) -> TotalColoring:
    core, center, levels = _levels(t)
    X = _side_of(t, center)
    vc, ec = _star_seed(t, core, center)
    for bit, attach in zip(bits, levels):
        xs, ys = _parents(attach, X, vc)
        order = _slots(attach, xs) + _slots(attach, ys[::-1])
        if bit:
            order.reverse()
        M = len(order)
        for v in list(vc):
            if v not in X:
                vc[v] = vc[v] + _dd(M)
        for e in ec:
            ec[e] = ec[e] + _dd(M)
        for j, (p, leaf) in enumerate(order):
            c = _kd(j)
            ec[edge_key(p, leaf)] = c
            vc[leaf] = vc[p] + c if p in X else vc[p] - c
    return TotalColoring(vc, ec, "graceful", X)


def _edge_difference_tree(t: Graph, bits) -> TotalColoring:
    core, center, levels = _levels(t)
    X = _side_of(t, center)
    vc, ec = _star_seed(t, core, center)
    q = len(ec)
    ec = {e: LinForm(2, q - 1) - c for e, c in ec.items()}
    alpha = q - 1
    for bit, attach in zip(bits, levels):
        xs, ys = _parents(attach, X, vc)
        if bit:
            order = _slots(attach, ys[::-1]) + _slots(attach, xs[::-1])
        else:
            order = _slots(attach, xs) + _slots(attach, ys)
        M = len(order)
        for v in list(vc):
            if v not in X:
                vc[v] = vc[v] + _dd(M)
        top = _kd(q - 1)
        alpha += M
        target = LinForm(2, alpha)
        for j, (p, leaf) in enumerate(order, start=1):
            c = top + _dd(j)
            ec[edge_key(p, leaf)] = c
            vc[leaf] = target + vc[p] - c if p in X else c + vc[p] - target
        q += M
    return TotalColoring(vc, ec, "edge-difference", X)


def _graceful_difference_tree(t: Graph, bits) -> TotalColoring:
    core, center, levels = _levels(t)
    X = _side_of(t, center)
    vc, ec = _star_seed(t, core, center)
    beta = 0
    for bit, attach in zip(bits, levels):
        xs, ys = _parents(attach, X, vc)
        if bit:
            order = _slots(attach, ys[::-1]) + _slots(attach, xs[::-1])
        else:
            order = _slots(attach, xs) + _slots(attach, ys)
        M = len(order)
        for v in list(vc):
            if v not in X:
                vc[v] = vc[v] + _dd(2 * M)
        for e in ec:
            ec[e] = ec[e] + _dd(M)
        beta += M
        for j, (p, leaf) in enumerate(order):
            c = _kd(j)
            ec[edge_key(p, leaf)] = c
            vc[leaf] = vc[p] + c + _dd(beta) if p in X else vc[p] - c - _dd(beta)
    return TotalColoring(vc, ec, "graceful-difference", X)


def tree_kd_coloring(t: Graph, family: str = "graceful", k="sym", d="sym", choices=None) -> TotalColoring:
    """Leaf-adding coloring of a tree for one of six families.

    The tree is peeled down to a star, the star is colored with its center in
    X, and the removed leaves are added back one level at a time. `choices`
    holds one bit per level (None means all zeros). The returned coloring
    carries the family constant when the family has one.
    """
    if family not in TREE_FAMILIES:
        raise TopocodeError("unknown-family", family)
    if not t.is_tree():
        raise TopocodeError("not-a-tree")
    if t.p < 2:
        raise TopocodeError("not-a-tree", "need at least one edge")
    m = len(peel_leaves(t)) - 1
    bits = _bits_for(choices, m)
    if family == "edge-difference":
        f = _edge_difference_tree(t, bits)
        f.constant = LinForm(2, t.q - 1)
    elif family == "graceful-difference":
        f = _graceful_difference_tree(t, bits)
        f.constant = _graceful_difference_constant(t, f)
    else:
        f = _graceful_tree(t, bits)
        if family != "graceful":
            f = derive_equivalent(f, t, family)
    return _finish(f, k, d)


def _graceful_difference_constant(t: Graph, f: TotalColoring):
    u, v = t.edges[0]
    x, y = (u, v) if u in f.x_side else (v, u)
    return abs(abs(f.vertex_colors[y] - f.vertex_colors[x]) - f.edge_colors[(u, v)])


# ---------------------------------------------------------------- set-ordered graceful labelings

@dataclass
class SetOrderedGraceful:
    """Integer labeling with max f(X) < min f(Y) and edge labels exactly 1..q."""

    coloring: TotalColoring

    @classmethod
    def from_labels(cls, g: Graph, labels, X) -> "SetOrderedGraceful":
        labels = {v: int(c) for v, c in (labels.items() if isinstance(labels, dict) else enumerate(labels))}
        ec = {(u, v): abs(labels[u] - labels[v]) for u, v in g.edges}
        return cls(TotalColoring(labels, ec, "graceful", frozenset(X)))

    def check(self, g: Graph) -> None:
        f = self.coloring
        if f.x_side is None:
            raise TopocodeError("invalid-graph", "labeling needs an explicit X side")
        vals = list(f.vertex_colors.values()) + list(f.edge_colors.values())
        if not all(isinstance(c, int) for c in vals):
            raise TopocodeError("not-integer", "set-ordered labelings use plain integers")
        if len(set(f.vertex_colors.values())) != g.p:
            raise TopocodeError("invalid-graph", "vertex labels are not distinct")
        rep = verify(g, f, FamilySpec("graceful", set_ordered=True), 1, 1)
        if not rep.passed:
            raise TopocodeError("invalid-graph", "not a set-ordered graceful labeling: "
                                + "; ".join(r for _, r in rep.violations[:3]))

    @property
    def X(self) -> frozenset:
        return self.coloring.x_side

    def label(self, v: int) -> int:
        return self.coloring.vertex_colors[v]


@dataclass
class GracefulSearch:
    status: str  # found, nonexistent or unknown
    labeling: SetOrderedGraceful | None = None
    nodes: int = 0


def find_set_ordered_graceful(g: Graph, budget: int = 2_000_000, seed: int | None = None) -> GracefulSearch:
    """Backtracking search for a set-ordered graceful labeling.

    Labels are drawn from [0, q]; 0 goes on the X side and q on the Y side.
    Both orientations of the bipartition are tried. Running out of budget
    gives status "unknown".
    """
    if g.q > 14:
        raise TopocodeError("too-large", "search is limited to q <= 14")
    if g.q == 0 or not g.is_connected():
        raise TopocodeError("not-connected")
    xy = g.two_coloring()
    if xy is None:
        return GracefulSearch("nonexistent")
    q = g.q
    rng = random.Random(seed) if seed is not None else None
    order_all = _search_order(g)
    nodes = 0
    exhausted = False
    for X, Y in ((xy[0], xy[1]), (xy[1], xy[0])):
        labels = {}
        used_lab = set()
        used_diff = set()

        def rec(i):
            nonlocal nodes, exhausted
            if i == len(order_all):
                return True
            v = order_all[i]
            cands = list(range(q + 1))
            if rng is not None:
                rng.shuffle(cands)
            for lab in cands:
                if lab in used_lab:
                    continue
                if v in X:
                    if any(labels[w] <= lab for w in labels if w in Y):
                        continue
                elif any(labels[w] >= lab for w in labels if w in X):
                    continue
                diffs = [abs(lab - labels[w]) for w in g.neighbors(v) if w in labels]
                if len(set(diffs)) != len(diffs) or any(x in used_diff or x == 0 for x in diffs):
                    continue
                nodes += 1
                if nodes > budget:
                    exhausted = True
                    return False
                labels[v] = lab
                used_lab.add(lab)
                used_diff.update(diffs)
                if _feasible(labels, X, q) and rec(i + 1):
                    return True
                del labels[v]
                used_lab.discard(lab)
                used_diff.difference_update(diffs)
                if exhausted:
                    return False
            return False

        if rec(0):
            sog = SetOrderedGraceful.from_labels(g, labels, X)
            sog.check(g)
            return GracefulSearch("found", sog, nodes)
        if exhausted:
            return GracefulSearch("unknown", None, nodes)
    return GracefulSearch("nonexistent", None, nodes)


def _search_order(g: Graph) -> list[int]:
    start = max(range(g.p), key=lambda v: (g.degree(v), -v))
    seen = [start]
    idx = 0
    while idx < len(seen):
        v = seen[idx]
        idx += 1
        for w in sorted(g.neighbors(v), key=lambda w: (-g.degree(w), w)):
            if w not in seen:
                seen.append(w)
    return seen


def _feasible(labels, X, q) -> bool:
    # the edge labeled q forces 0 onto X and q onto Y
    xs = [labels[v] for v in labels if v in X]
    ys = [labels[v] for v in labels if v not in X]
    if q in xs or 0 in ys:
        return False
    return not (xs and ys and max(xs) >= min(ys))


# ---------------------------------------------------------------- leaf-added graphs

def leaf_added_coloring(g: Graph, base: SetOrderedGraceful, plan: LeafPlan, k="sym", d="sym",
        family: str = "graceful-difference") -> tuple[Graph, TotalColoring]:
    """Color g with extra leaves from a set-ordered graceful labeling of g.

    Returns the leaf-added graph (new vertices appended by host id) and its
    coloring, whose `constant` holds the closed-form family constant.
    """
    if family not in LEAF_ADDING_FAMILIES:
        raise TopocodeError("unknown-family", family)
    base.check(g)
    for v, _ in plan.counts:
        g._check_vertex(v)
    h, owner = add_leaves(g, plan, return_owner=True)
    X = base.X
    f = base.coloring.vertex_colors
    fe = base.coloring.edge_colors
    q = g.q
    m = plan.total
    a = max(f[v] for v in X)
    b = min(f[v] for v in range(g.p) if v not in X)

    # transformed integer labels, then lifted to linear forms
    if family == "graceful-difference":
        tx = {v: a - f[v] for v in X}
        ty = {v: q + b - f[v] for v in range(g.p) if v not in X}
        te = {e: q + 1 - c for e, c in fe.items()}
    elif family == "edge-difference":
        tx = {v: a - f[v] for v in X}
        ty = {v: q + b - f[v] for v in range(g.p) if v not in X}
        te = dict(fe)
    elif family == "felicitous-difference":
        tx = {v: a - f[v] for v in X}
        ty = {v: f[v] for v in range(g.p) if v not in X}
        te = dict(fe)
    else:
        tx = {v: a - f[v] for v in X}
        ty = {v: f[v] for v in range(g.p) if v not in X}
        te = {e: q + 1 - c for e, c in fe.items()}
    vc = {v: _dd(c) for v, c in tx.items()}
    vc.update({v: _kd(c - 1 + m) for v, c in ty.items()})
    shift_edges = family in ("graceful-difference", "edge-magic")
    ec = {e: _kd(c - 1 + (m if shift_edges else 0)) for e, c in te.items()}

    leaves = {}
    for w, host in owner:
        leaves.setdefault(host, []).append(w)
    key = lambda v: (entry_key(vc[v]), v)
    xs = sorted((v for v in leaves if v in X), key=key)
    ys = sorted((v for v in leaves if v not in X), key=key)

    def slots(parents):
        return [(p, w) for p in parents for w in leaves[p]]

    if family == "graceful-difference":
        order, first = slots(ys) + slots(xs[::-1]), 0
        C = _dd(b - a - 1)
        const = C
        rule = lambda p, c: vc[p] + c + C if p in X else vc[p] - c - C
    elif family == "edge-difference":
        order, first = slots(xs) + slots(ys[::-1]), q
        const = LinForm(2, q + b - a + m - 2)
        rule = lambda p, c: const - c + vc[p] if p in X else vc[p] - (const - c)
    elif family == "felicitous-difference":
        order, first = slots(xs) + slots(ys[::-1]), q
        const = _dd(a + m)
        rule = lambda p, c: const + c - vc[p]
    else:
        order, first = slots(ys[::-1]) + slots(xs[::-1]), 0
        const = LinForm(2, a + q + 2 * m - 1)
        rule = lambda p, c: const - c - vc[p]
    for j, (p, w) in enumerate(order):
        c = _kd(first + j)
        ec[edge_key(p, w)] = c
        vc[w] = rule(p, c)
    x_side = frozenset(X) | frozenset(w for w, host in owner if host not in X)
    out = TotalColoring(vc, ec, family, x_side, const)
    return h, _finish(out, k, d)


def leaf_added_constant(base: SetOrderedGraceful, g: Graph, m: int, family: str) -> LinForm:
    """Closed-form constant of the leaf-added coloring."""
    X = base.X
    f = base.coloring.vertex_colors
    a = max(f[v] for v in X)
    b = min(f[v] for v in range(g.p) if v not in X)
    q = g.q
    if family == "graceful-difference":
        return _dd(b - a - 1)
    if family == "edge-difference":
        return LinForm(2, -2) + _dd(q + b - a + m)
    if family == "felicitous-difference":
        return _dd(a + m)
    if family == "edge-magic":
        return LinForm(2, a + q + 2 * m - 1)
    raise TopocodeError("unknown-family", family)


# ---------------------------------------------------------------- forests and books

def flawed_forest_labeling(trees, labelings) -> tuple[Graph, TotalColoring]:
    """Global labeling of a disjoint union of trees, each with a set-ordered graceful labeling.

    Tree i keeps its edge differences shifted by the sizes of the later trees,
    so the last tree keeps edge labels 1..p_m-1 and one label is skipped
    between consecutive trees.
    """
    trees = list(trees)
    labelings = list(labelings)
    if len(trees) != len(labelings) or not trees:
        raise TopocodeError("length-mismatch", "one labeling per tree is needed")
    sides = []
    for t, lab in zip(trees, labelings):
        if not t.is_tree():
            raise TopocodeError("not-a-tree")
        lab.check(t)
        X = lab.X
        sides.append((len(X), t.p - len(X)))
    M = sum(s for s, _ in sides)
    n = len(trees)
    vc, ec = {}, {}
    edges, X_all = [], set()
    off = 0
    for i, (t, lab) in enumerate(zip(trees, labelings)):
        s_before = sum(s for s, _ in sides[:i])
        t_after = sum(tt for _, tt in sides[i + 1:])
        s_i = sides[i][0]
        for v in range(t.p):
            c = lab.label(v)
            if v in lab.X:
                vc[off + v] = c + s_before
                X_all.add(off + v)
            else:
                vc[off + v] = c - s_i + M + t_after
        for u, v in t.edges:
            e = (off + u, off + v)
            edges.append(e)
            ec[e] = abs(vc[off + u] - vc[off + v])
        off += t.p
    forest = Graph.make(off, edges, X_all, set(range(off)) - X_all)
    return forest, TotalColoring(vc, ec, "graceful", frozenset(X_all))


def build_graph_book(pages, s: int | None = None, d: int = 1) -> tuple[Graph, TotalColoring]:
    """Glue pages along a common X side and shift each page's Y and edge colors.

    Every page is (graph, coloring) whose X side has the same s colors; X
    vertices are matched in (color, id) order. Page j's Y-vertex and edge
    colors move up by (q_1 + ... + q_{j-1}) d. With plain integer colors the
    shift unit is `d`.
    """
    pages = list(pages)
    if not pages:
        raise TopocodeError("bad-parameters", "a book needs at least one page")
    spine_colors = None
    glued_edges, vc, ec = [], {}, {}
    shift = 0
    nxt = None
    for g, f in pages:
        f.check_total(g)
        xy = f.orientation(g)
        if xy is None:
            raise TopocodeError("not-bipartite", "every page must be bipartite")
        xs = sorted(xy[0], key=lambda v: (entry_key(f.vertex_colors[v]), v))
        cols = [f.vertex_colors[v] for v in xs]
        if s is not None and len(xs) != s:
            raise TopocodeError("bad-parameters", f"page X side has {len(xs)} vertices, expected {s}")
        if spine_colors is None:
            spine_colors = cols
            for i, c in enumerate(cols):
                vc[i] = c
            nxt = len(cols)
        elif [entry_key(c) for c in cols] != [entry_key(c) for c in spine_colors]:
            raise TopocodeError("bad-parameters", "spine color mismatch between pages")
        new_id = {v: i for i, v in enumerate(xs)}
        for v in sorted(xy[1]):
            new_id[v] = nxt
            vc[nxt] = _shift(f.vertex_colors[v], shift, d)
            nxt += 1
        for u, v in g.edges:
            e = edge_key(new_id[u], new_id[v])
            glued_edges.append(e)
            ec[e] = _shift(f.edge_colors[(u, v)], shift, d)
        shift += g.q
    X = set(range(len(spine_colors)))
    book = Graph.make(nxt, glued_edges, X, set(range(nxt)) - X)
    family = pages[0][1].family
    return book, TotalColoring(vc, ec, family, frozenset(X))


def _shift(c, n: int, d: int):
    if isinstance(c, LinForm):
        return c + _dd(n)
    return c + n * d
