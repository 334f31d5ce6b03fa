"""Set-colorings of trees and graphs, their checks, lifting to (k,d) form, and hypergraph extraction."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .coloring_engine import VerifyReport, _arith, w_value
from .constructors import TREE_FAMILIES, tree_kd_coloring
from .errors import TopocodeError
from .graph_core import Graph, peel_leaves, vertex_split_to_tree
from .linform import LinForm
from .topcode_matrix import entry_key
from .total_coloring import TotalColoring, edge_key

W_OPERATORS = {
    "abs-difference": lambda a, b: abs(a - b),
    "sum": lambda a, b: a + b,
}
MAGIC_SET_KINDS = ("edge-difference", "edge-magic", "felicitous-difference", "graceful-difference")
SET_FAMILIES = ("graceful", "harmonious", *MAGIC_SET_KINDS)
SET_CONSTRAINTS = (
    "vertices-covered", "edges-covered", "all-covered", "adjacent-vertex-sets-differ",
    "adjacent-edge-sets-differ", "edge-set-differs-from-ends", "ground-set-covered",
    "end-sets-meet", "adjacent-edge-sets-meet", "edge-set-meets-ends",
    "end-intersection-in-edge", "end-intersection-in-edge-rank", "adjacent-edge-sets-disjoint",
)


def _sorted_values(s):
    return sorted(s, key=entry_key)


def _enc(c):
    return c.to_json() if isinstance(c, LinForm) else c


def _dec(c):
    return LinForm.from_json(c) if isinstance(c, list) else int(c)


@dataclass
class SetColoring:
    """Finite value sets on vertices and edges.

    `x_values` lists the values that lift to pure multiples of d; every other
    value lifts to k plus a multiple of d. `levels` optionally records the
    peel level at which each vertex set was assigned.
    """

    vertex_sets: dict
    edge_sets: dict = field(default_factory=dict)
    x_values: frozenset | None = None
    levels: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertex_sets = {v: frozenset(s) for v, s in self.vertex_sets.items()}
        self.edge_sets = {edge_key(*e): frozenset(s) for e, s in self.edge_sets.items()}

    def vertex(self, v):
        return self.vertex_sets[v]

    def edge(self, u, v):
        return self.edge_sets[edge_key(u, v)]

    def ground_set(self) -> frozenset:
        out = set()
        for s in list(self.vertex_sets.values()) + list(self.edge_sets.values()):
            out |= s
        return frozenset(out)

    def to_json(self) -> dict:
        out = {"vertices": {str(v): [_enc(c) for c in _sorted_values(s)]
                            for v, s in sorted(self.vertex_sets.items())},
               "edges": {f"{u}-{v}": [_enc(c) for c in _sorted_values(s)]
                         for (u, v), s in sorted(self.edge_sets.items())}}
        if self.x_values is not None:
            out["x_values"] = [_enc(c) for c in _sorted_values(self.x_values)]
        if self.levels:
            out["levels"] = {str(v): lv for v, lv in sorted(self.levels.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SetColoring":
        verts = {int(v): {_dec(c) for c in s} for v, s in data["vertices"].items()}
        edges = {}
        for key, s in data.get("edges", {}).items():
            u, v = (int(x) for x in key.split("-"))
            edges[(u, v)] = {_dec(c) for c in s}
        xv = data.get("x_values")
        levels = {int(v): int(lv) for v, lv in data.get("levels", {}).items()}
        return cls(verts, edges, None if xv is None else frozenset(_dec(c) for c in xv), levels)


# ---------------------------------------------------------------- constructions

def _labels(t: Graph, f):
    if isinstance(f, TotalColoring):
        return dict(f.vertex_colors)
    if isinstance(f, dict):
        return dict(f)
    return dict(enumerate(f))


def _edge_labels(t: Graph, f):
    if isinstance(f, TotalColoring):
        return dict(f.edge_colors)
    return None


def _x_values(t: Graph, labels, X=None):
    if X is None:
        xy = t.two_coloring()
        if xy is None:
            return None
        X = xy[0]
    return frozenset(labels[v] for v in X)


def _star_center(vertices, t: Graph):
    """Vertex of largest degree inside the star; a single edge takes its larger id."""
    vs = set(vertices)
    return max(vs, key=lambda v: (sum(1 for w in t.neighbors(v) if w in vs), v))


def _intersection_edges(t: Graph, vs):
    return {e: vs[e[0]] & vs[e[1]] for e in t.edges}


def _w_edges(t: Graph, vs, W):
    op = W_OPERATORS[W] if isinstance(W, str) else W
    out = {}
    for u, v in t.edges:
        combos = {op(a, b) for a in vs[u] for b in vs[v]}
        out[(u, v)] = (vs[u] & vs[v]) | combos
    return out


def _check_injective(values, what):
    vals = list(values)
    if len(set(vals)) != len(vals):
        raise TopocodeError("invalid-graph", f"{what} labels are not distinct")


def _peel_vertex_sets(t: Graph, f):
    trace = peel_leaves(t)
    vs, levels = {}, {}
    for level, step in enumerate(trace.steps, start=1):
        alive = step.vertices
        if step.removed:
            kept = alive - step.removed
            for w in step.removed:
                parent = next(x for x in t.neighbors(w) if x in kept)
                vs[w] = {f[w], f[parent]}
                levels[w] = level
        else:
            c = _star_center(alive, t)
            vs[c] = {f[c]}
            levels[c] = level
            for w in alive - {c}:
                vs[w] = {f[w], f[c]}
                levels[w] = level
    return vs, levels


def peel_set_coloring(t: Graph, f, X=None) -> SetColoring:
    """Each peeled leaf gets {own label, neighbor's label}; the final star center gets its own label.

    Edge sets are the intersections of their end sets.
    """
    if not t.is_tree():
        raise TopocodeError("not-a-tree")
    labels = _labels(t, f)
    _check_injective(labels.values(), "vertex")
    if t.p == 1:
        return SetColoring({0: {labels[0]}}, {}, _x_values(t, labels, X), {0: 1})
    vs, levels = _peel_vertex_sets(t, labels)
    return SetColoring(vs, _intersection_edges(t, vs), _x_values(t, labels, X), levels)


def _diametral_path(t: Graph, alive) -> list[int]:
    sub = set(alive)

    def far(src):
        dist = {src: 0}
        parent = {src: None}
        order = [src]
        for v in order:
            for w in t.neighbors(v):
                if w in sub and w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    order.append(w)
        best = max(sorted(dist), key=lambda v: dist[v])
        return best, parent

    a, _ = far(min(sub))
    b, parent = far(a)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def _ordered_path_sets(t: Graph, f):
    alive = set(range(t.p))
    vs, levels = {}, {}
    level = 0
    while True:
        level += 1
        path = _diametral_path(t, alive)
        if len(path) <= 3:
            c = _star_center(alive, t)
            vs[c] = {f[c]}
            levels[c] = level
            for w in alive - {c}:
                vs[w] = {f[w], f[c]}
                levels[w] = level
            return vs, levels
        drop = set()
        for hub, nxt in ((path[1], path[2]), (path[-2], path[-3])):
            for w in t.neighbors(hub):
                if w in alive and w != nxt:
                    vs[w] = {f[w], f[hub]}
                    levels[w] = level
                    drop.add(w)
        alive -= drop


TREE_SET_VARIANTS = ("ordered-path", "peel", "neighbors", "incident-edges", "neighbors-and-edges")


def labeled_tree_set_coloring(t: Graph, f, variant: str = "ordered-path", W="abs-difference") -> SetColoring:
    """Set-coloring of a tree from a labeling, then edge sets by intersection plus W-combinations.

    ordered-path: repeatedly strip the leaves hanging off the second and
    second-to-last vertices of a longest path. peel: strip all leaves level
    by level. neighbors: a vertex gets its neighbors' labels. incident-edges:
    a vertex gets the labels of its edges. neighbors-and-edges: the union of
    the last two. For an edge uv the set is
    (F(u) & F(v)) | {W(a, b) : a in F(u), b in F(v)}.
    """
    if variant not in TREE_SET_VARIANTS:
        raise TopocodeError("bad-mode", f"variant {variant}")
    if not t.is_tree():
        raise TopocodeError("not-a-tree")
    if t.p < 2:
        raise TopocodeError("not-a-tree", "need at least one edge")
    labels = _labels(t, f)
    elabels = _edge_labels(t, f)
    levels = {}
    if variant in ("ordered-path", "peel", "neighbors"):
        _check_injective(labels.values(), "vertex")
    if variant in ("incident-edges", "neighbors-and-edges"):
        if elabels is None:
            op = W_OPERATORS[W] if isinstance(W, str) else W
            elabels = {e: op(labels[e[0]], labels[e[1]]) for e in t.edges}
        _check_injective(elabels.values(), "edge")
    if variant == "ordered-path":
        vs, levels = _ordered_path_sets(t, labels)
    elif variant == "peel":
        vs, levels = _peel_vertex_sets(t, labels)
    elif variant == "neighbors":
        vs = {x: {labels[y] for y in t.neighbors(x)} for x in range(t.p)}
    elif variant == "incident-edges":
        vs = {x: {elabels[edge_key(x, z)] for z in t.neighbors(x)} for x in range(t.p)}
    else:
        vs = {x: {labels[y] for y in t.neighbors(x)} | {elabels[edge_key(x, z)] for z in t.neighbors(x)}
              for x in range(t.p)}
    return SetColoring(vs, _w_edges(t, vs, W), _x_values(t, labels), levels)


def lift_kd(sc: SetColoring, k="sym", d="sym", x_values=None) -> SetColoring:
    """Map each value v to v*d when it is an X-value and to k + v*d otherwise."""
    xv = x_values if x_values is not None else sc.x_values
    if xv is None:
        raise TopocodeError("needs-bipartition", "no X-values known for lifting")
    xv = frozenset(xv)

    def one(v):
        if isinstance(v, LinForm):
            raise TopocodeError("not-integer", "lift expects integer values")
        form = LinForm(0, v) if v in xv else LinForm(1, v)
        if k == "sym" and d == "sym":
            return form
        return form.evaluate(int(k), int(d))

    vs = {v: {one(c) for c in s} for v, s in sc.vertex_sets.items()}
    es = {e: {one(c) for c in s} for e, s in sc.edge_sets.items()}
    return SetColoring(vs, es, frozenset(one(c) for c in xv), dict(sc.levels))


# ---------------------------------------------------------------- hypergraphs

@dataclass(frozen=True)
class Hypergraph:
    ground: frozenset
    edges: tuple  # distinct nonempty frozensets, sorted

    @property
    def valid(self) -> bool:
        covered = frozenset().union(*self.edges) if self.edges else frozenset()
        return all(self.edges) and covered == self.ground

    def to_json(self) -> dict:
        return {"lambda": [_enc(c) for c in _sorted_values(self.ground)],
                "edges": [[_enc(c) for c in _sorted_values(e)] for e in self.edges]}


def extract_hypergraph(sc: SetColoring, scope: str = "vertices") -> Hypergraph:
    """Distinct assigned sets in scope as hyperedges, their union as ground set."""
    if scope == "vertices":
        sets = list(sc.vertex_sets.values())
    elif scope == "edges":
        sets = list(sc.edge_sets.values())
    elif scope == "total":
        sets = list(sc.vertex_sets.values()) + list(sc.edge_sets.values())
    else:
        raise TopocodeError("bad-mode", f"scope {scope}")
    if any(not s for s in sets):
        raise TopocodeError("empty-set", "an assigned set is empty")
    distinct = sorted(set(sets), key=lambda s: tuple(entry_key(c) for c in _sorted_values(s)))
    ground = frozenset().union(*distinct) if distinct else frozenset()
    return Hypergraph(ground, tuple(distinct))


# ---------------------------------------------------------------- verification

@dataclass
class SetVerifyReport(VerifyReport):
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = super().to_json()
        out["checks"] = dict(self.checks)
        out["witnesses"] = {name: {f"{u}-{v}": [_enc(x) for x in w] for (u, v), w in wit.items()}
                            for name, wit in self.witnesses.items()}
        return out


def _pairs_adjacent_edges(g: Graph):
    for u in range(g.p):
        nb = g.neighbors(u)
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                yield u, edge_key(u, nb[i]), edge_key(u, nb[j])


def _match(edges, options, targets):
    """Assign each edge a distinct target from its options (Kuhn's augmenting paths)."""
    owner = {}

    def augment(e, seen):
        for c in options[e]:
            if c in seen or c not in targets:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = e
                return True
        return False

    for e in edges:
        if not augment(e, set()):
            return None
    return {e: c for c, e in owner.items()}


def verify_set_coloring(g: Graph, sc: SetColoring, constraints=(), magic=None, k="sym", d="sym",
                        r: int = 2, ground=None) -> SetVerifyReport:
    """Check named constraints on a set-coloring.

    Constraint names are those in SET_CONSTRAINTS (the rank variant of
    end-intersection-in-edge needs at least r common values), plus the
    families in SET_FAMILIES. Family checks are existential:
    each edge needs some c in F(uv), a in F(u), b in F(v) meeting the
    constraint; `magic` = (family, constant) pins the constant. Values may be
    linear forms (checked as identities in k and d) or integers at the given
    (k, d).
    """
    names = list(constraints)
    if magic is not None and magic[0] not in names:
        names.append(magic[0])
    rep = SetVerifyReport(True)
    vs, es = sc.vertex_sets, sc.edge_sets

    def fail(name, msg, e=None):
        rep.checks[name] = False
        rep.violations.append((e, f"{name}: {msg}"))

    for name in names:
        rep.checks[name] = True
        if name == "vertices-covered" or name == "all-covered":
            if any(v not in vs for v in range(g.p)):
                fail(name, "a vertex has no set")
        if name == "edges-covered" or name == "all-covered":
            if any(e not in es for e in g.edges):
                fail(name, "an edge has no set")
        if name == "adjacent-vertex-sets-differ":
            for u, v in g.edges:
                if vs[u] == vs[v]:
                    fail(name, "adjacent vertices share a set", (u, v))
        elif name == "adjacent-edge-sets-differ":
            for _, a, b in _pairs_adjacent_edges(g):
                if es[a] == es[b]:
                    fail(name, "adjacent edges share a set", a)
        elif name == "edge-set-differs-from-ends":
            for u, v in g.edges:
                if es[(u, v)] in (vs[u], vs[v]):
                    fail(name, "an edge set equals an end set", (u, v))
        elif name == "ground-set-covered":
            want = frozenset(ground) if ground is not None else sc.ground_set()
            if sc.ground_set() != want:
                fail(name, "assigned sets do not cover the ground set")
        elif name == "end-sets-meet":
            for u, v in g.edges:
                if not vs[u] & vs[v]:
                    fail(name, "end sets are disjoint", (u, v))
        elif name == "adjacent-edge-sets-meet":
            for _, a, b in _pairs_adjacent_edges(g):
                if not es[a] & es[b]:
                    fail(name, "adjacent edge sets are disjoint", a)
        elif name == "edge-set-meets-ends":
            for u, v in g.edges:
                if not (es[(u, v)] & vs[u] and es[(u, v)] & vs[v]):
                    fail(name, "edge set misses an end set", (u, v))
        elif name in ("end-intersection-in-edge", "end-intersection-in-edge-rank"):
            need = 1 if name == "end-intersection-in-edge" else r
            for u, v in g.edges:
                common = vs[u] & vs[v]
                if not common <= es[(u, v)] or len(common) < need:
                    fail(name, "intersection not contained or too small", (u, v))
        elif name == "adjacent-edge-sets-disjoint":
            for _, a, b in _pairs_adjacent_edges(g):
                if es[a] & es[b]:
                    fail(name, "adjacent edge sets meet", a)
        elif name in SET_FAMILIES:
            const = magic[1] if magic is not None and magic[0] == name else None
            _check_family(g, sc, name, const, _arith(k, d), rep)
        elif name not in ("vertices-covered", "edges-covered", "all-covered"):
            raise TopocodeError("unknown-family", name)
    rep.passed = all(rep.checks.values())
    return rep


def _check_family(g: Graph, sc: SetColoring, name: str, const, ar, rep: SetVerifyReport):
    vs = {v: [ar.conv(c) for c in s] for v, s in sc.vertex_sets.items()}
    es = {e: [ar.conv(c) for c in s] for e, s in sc.edge_sets.items()}
    q = g.q
    if name in ("graceful", "harmonious"):
        options = {}
        for u, v in g.edges:
            opts = []
            for c in es[(u, v)]:
                for a, b in product(vs[u], vs[v]):
                    if name == "graceful":
                        ok = c == abs(a - b)
                    else:
                        rhs = ar.mod_qd(a + b - ar.k, q)
                        ok = rhs is not None and c - ar.k == rhs
                    if ok:
                        opts.append(c)
                        break
            options[(u, v)] = sorted(set(opts), key=entry_key)
        targets = {ar.lin(1, i) for i in range(q)}
        chosen = _match(list(g.edges), options, targets)
        if chosen is None:
            rep.checks[name] = False
            rep.violations.append((None, f"{name}: no witnesses covering k..k+(q-1)d"))
        else:
            rep.witnesses[name] = {e: (c,) for e, c in sorted(chosen.items())}
        return
    per_edge = {}
    for u, v in g.edges:
        vals = {}
        for c in es[(u, v)]:
            for a, b in product(vs[u], vs[v]):
                vals.setdefault(w_value(name, a, b, c), (a, c, b))
        per_edge[(u, v)] = vals
    common = None
    for vals in per_edge.values():
        common = set(vals) if common is None else common & set(vals)
    if const is not None:
        want = ar.conv(const)
        common = {want} if common and want in common else set()
    if not common:
        rep.checks[name] = False
        rep.violations.append((None, f"{name}: no common constant over all edges"))
        return
    pick = min(common, key=entry_key)
    rep.constant_found = pick
    rep.witnesses[name] = {e: per_edge[e][pick] for e in g.edges}


# ---------------------------------------------------------------- connected graphs

@dataclass
class GraphSetColoring:
    coloring: SetColoring
    tree: Graph
    back: list  # tree vertex -> graph vertex
    tree_colorings: dict  # family -> TotalColoring on the tree

    def check(self, g: Graph) -> dict:
        """Family -> whether its witnesses exist on g, using the tree coloring's constant."""
        out = {}
        for fam in SET_FAMILIES:
            const = self.tree_colorings[fam].constant if fam in MAGIC_SET_KINDS else None
            magic = (fam, const) if const is not None else None
            out[fam] = verify_set_coloring(g, self.coloring, [fam], magic=magic).passed
        return out


def graph_kd_total_set_coloring(g: Graph, seed: int = 0) -> GraphSetColoring:
    """Split g into a tree, color it for all six families, and pool the values per element of g."""
    if not g.is_connected():
        raise TopocodeError("not-connected")
    if g.q == 0:
        raise TopocodeError("invalid-graph", "need at least one edge")
    t, back = vertex_split_to_tree(g, seed)
    colorings = {fam: tree_kd_coloring(t, fam) for fam in TREE_FAMILIES}
    vs = {v: set() for v in range(g.p)}
    es = {e: set() for e in g.edges}
    for f in colorings.values():
        for w in range(t.p):
            vs[back[w]].add(f.vertex_colors[w])
        for a, b in t.edges:
            es[edge_key(back[a], back[b])].add(f.edge_colors[(a, b)])
    return GraphSetColoring(SetColoring(vs, es), t, back, colorings)
