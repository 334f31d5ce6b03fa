"""Every-zero matrix groups, colored graph homomorphisms and +-e move distances."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .errors import TopocodeError
from .graph_core import Graph, canonical_form, pm_tree_moves
from .topcode_matrix import TopcodeMatrix, entry_key
from .total_coloring import TotalColoring, edge_key

EDGE_FUNCTIONS = {
    "sum": lambda x, y, M: x + y,
    "abs-difference": lambda x, y, M: abs(x - y),
    "sum-mod": lambda x, y, M: (x + y - 1) % M + 1,
}


def _rep(v: int, M: int) -> int:
    """Representative of v mod M in [1, M]."""
    r = v % M
    return r if r else M


def _edge_fn(f):
    if callable(f):
        return f
    try:
        return EDGE_FUNCTIONS[f]
    except KeyError:
        raise TopocodeError("unknown-family", f"edge function {f!r}") from None


@dataclass
class MatrixGroup:
    """Members T^1..T^m (index i is members[i-1]); vertex entries are residues in [1, M]."""

    members: list
    M: int
    f: object = "sum"

    def __post_init__(self):
        if self.M < 1 or not self.members:
            raise TopocodeError("bad-parameters", "need M >= 1 and at least one member")
        q = {m.q for m in self.members}
        if len(q) != 1:
            raise TopocodeError("length-mismatch", "members differ in q")

    @property
    def m(self) -> int:
        return len(self.members)

    def member(self, i: int) -> TopcodeMatrix:
        if not 1 <= i <= self.m:
            raise TopocodeError("index-out-of-range", str(i))
        return self.members[i - 1]

    def combine(self, i: int, j: int, k: int, mode: str = "add") -> TopcodeMatrix:
        """Entrywise x_i+x_j-x_k (add) or x_i-x_j+x_k (sub) mod M on X and Y; E from f."""
        a, b, z = self.member(i), self.member(j), self.member(k)
        sign = {"add": 1, "sub": -1}.get(mode)
        if sign is None:
            raise TopocodeError("bad-mode", mode)
        fn = _edge_fn(self.f)
        X = [_rep(x + sign * (y - w), self.M) for x, y, w in zip(a.X, b.X, z.X)]
        Y = [_rep(x + sign * (y - w), self.M) for x, y, w in zip(a.Y, b.Y, z.Y)]
        E = [fn(x, y, self.M) for x, y in zip(X, Y)]
        return TopcodeMatrix.from_rows(X, E, Y)

    def to_json(self) -> dict:
        return {"M": self.M, "f": self.f if isinstance(self.f, str) else None,
                "members": [m.to_json() for m in self.members]}

    @classmethod
    def from_json(cls, data: dict) -> "MatrixGroup":
        return cls([TopcodeMatrix.from_json(m) for m in data["members"]], int(data["M"]),
                   data.get("f") or "sum")


def _group_op(G: MatrixGroup, i, j, k, mode) -> int:
    lam = _rep(i + j - k if mode == "add" else i - j + k, G.M)
    got = G.combine(i, j, k, mode)
    if lam > G.m or got != G.member(lam):
        raise TopocodeError("corrupt-group", f"T^{i} and T^{j} with zero T^{k} do not land on T^{lam}")
    return lam


def group_add(G: MatrixGroup, i: int, j: int, k: int) -> int:
    """Index i+j-k mod M (in [1, m]) after checking the entrywise identity."""
    return _group_op(G, i, j, k, "add")


def group_sub(G: MatrixGroup, i: int, j: int, k: int) -> int:
    """Index i-j+k mod M (in [1, m]) after checking the entrywise identity."""
    return _group_op(G, i, j, k, "sub")


def build_every_zero_family(base: TopcodeMatrix, M: int, f="sum", check: bool = True) -> MatrixGroup:
    """Members T^i obtained by adding i-1 to every vertex entry mod M, edge row from f."""
    if not base.is_integer():
        raise TopocodeError("not-integer", "base must have integer entries")
    if any(not 1 <= c <= M for c in base.X + base.Y):
        raise TopocodeError("domain-error", f"vertex entries must lie in [1, {M}]")
    fn = _edge_fn(f)
    members = []
    for i in range(1, M + 1):
        X = [_rep(x + i - 1, M) for x in base.X]
        Y = [_rep(y + i - 1, M) for y in base.Y]
        members.append(TopcodeMatrix.from_rows(X, [fn(x, y, M) for x, y in zip(X, Y)], Y))
    if list(base.E) != list(members[0].E):
        raise TopocodeError("corrupt-group", "base edge row disagrees with the edge function")
    G = MatrixGroup(members, M, f)
    if check:
        check_closure(G)
    return G


def check_closure(G: MatrixGroup) -> None:
    """Exhaustively check both operations for every triple of indices."""
    for k in range(1, G.m + 1):
        for i in range(1, G.m + 1):
            for j in range(1, G.m + 1):
                group_add(G, i, j, k)
                group_sub(G, i, j, k)


# ---------------------------------------------------------------- homomorphisms

CONDITIONS = (
    "bipartite", "edge-difference", "edge-homomorphism", "vertex-color-set", "odd-vertex-color-set",
    "grace-color-set", "odd-grace-color-set", "set-ordered", "vertex-color",
)
DEFAULT_COLORED = ("vertex-color", "edge-homomorphism")


def _phi_list(T: Graph, phi) -> list[int]:
    if isinstance(phi, dict):
        missing = [v for v in range(T.p) if v not in phi]
        if missing:
            raise TopocodeError("partial-map", f"no image for {missing[:5]}")
        return [int(phi[v]) for v in range(T.p)]
    phi = list(phi)
    if len(phi) != T.p:
        raise TopocodeError("partial-map", "map length differs from the vertex count")
    return [int(v) for v in phi]


def homomorphism_failures(T: Graph, G: Graph, phi, colored=None, conditions=None) -> list[str]:
    """Reasons the map fails; empty when it is a (colored) homomorphism."""
    im = _phi_list(T, phi)
    out = []
    for v in im:
        if not 0 <= v < G.p:
            raise TopocodeError("no-such-vertex", str(v))
    for u, v in T.edges:
        if not G.has_edge(im[u], im[v]):
            out.append(f"edge {u}-{v} maps to a non-edge")
    if colored is None:
        return out
    f, g = colored
    names = set(conditions or DEFAULT_COLORED)
    unknown = names - set(CONDITIONS)
    if unknown:
        raise TopocodeError("bad-mode", f"unknown conditions {sorted(unknown)}")
    fv, fe = f.vertex_colors, f.edge_colors
    gv, ge = g.vertex_colors, g.edge_colors
    if "vertex-color" in names:
        for v in range(T.p):
            if fv[v] != gv[im[v]]:
                out.append(f"vertex {v} color not preserved")
    if "edge-homomorphism" in names:
        for u, v in T.edges:
            e = edge_key(im[u], im[v])
            if e in ge and fe[(u, v)] != ge[e]:
                out.append(f"edge {u}-{v} color not preserved")
    if "bipartite" in names:
        a, b = f.orientation(T), g.orientation(G)
        if a is None or b is None:
            out.append("a bipartition is missing")
        else:
            for u, v in T.edges:
                x, y = (u, v) if u in a[0] else (v, u)
                if im[x] not in b[0] or im[y] not in b[1]:
                    out.append(f"edge {u}-{v} does not map X to W")
    if "edge-difference" in names:
        for gr, c in ((T, f), (G, g)):
            for u, v in gr.edges:
                if c.edge_colors[(u, v)] != abs(c.vertex_colors[u] - c.vertex_colors[v]):
                    out.append("edge color is not the vertex color difference")
                    break
    for name, scale, add in (("vertex-color-set", 1, 1), ("odd-vertex-color-set", 2, 2)):
        if name in names:
            for gr, c in ((T, f), (G, g)):
                top = scale * gr.q + add
                if not all(isinstance(x, int) and 1 <= x <= top for x in c.vertex_colors.values()):
                    out.append(f"vertex colors outside [1,{top}]")
    if "grace-color-set" in names:
        want_t, want_g = set(range(1, T.q + 1)), set(range(1, G.q + 1))
        if set(fe.values()) != want_t or set(ge.values()) != want_g or want_t != want_g:
            out.append("edge color sets are not [1,q]")
    if "odd-grace-color-set" in names:
        want_t, want_g = set(range(1, 2 * T.q, 2)), set(range(1, 2 * G.q, 2))
        if set(fe.values()) != want_t or set(ge.values()) != want_g or want_t != want_g:
            out.append("edge color sets are not the odd numbers up to 2q-1")
    if "set-ordered" in names:
        for gr, c in ((T, f), (G, g)):
            xy = c.orientation(gr)
            if xy is None or not xy[0] or not xy[1]:
                out.append("set-ordered check needs both sides")
                continue
            hi = max((c.vertex_colors[v] for v in xy[0]), key=entry_key)
            lo = min((c.vertex_colors[v] for v in xy[1]), key=entry_key)
            if not entry_key(hi) < entry_key(lo):
                out.append("not set-ordered")
    return out


def homomorphism_check(T: Graph, G: Graph, phi, colored=None, conditions=None) -> bool:
    """Edge preservation, plus color conditions when `colored` = (f on T, g on G) is given.

    Condition names are listed in CONDITIONS.
    """
    return not homomorphism_failures(T, G, phi, colored, conditions)


def coincide_same_colors(T: Graph, f: TotalColoring, classes=None):
    """Merge vertices sharing a color; returns (G, phi as a list old->new, coloring of G).

    `classes` optionally restricts merging to the given groups of vertices.
    New ids follow the smallest original id in each class.
    """
    f.check_total(T)
    if classes is None:
        by_color = {}
        for v in range(T.p):
            by_color.setdefault(entry_key(f.vertex_colors[v]), []).append(v)
        groups = list(by_color.values())
    else:
        groups = [sorted(set(c)) for c in classes]
        seen = [v for c in groups for v in c]
        if len(seen) != len(set(seen)):
            raise TopocodeError("invalid-partition", "classes overlap")
        groups += [[v] for v in range(T.p) if v not in set(seen)]
        for c in groups:
            if len({entry_key(f.vertex_colors[v]) for v in c}) > 1:
                raise TopocodeError("invalid-partition", "a class mixes colors")
    for c in groups:
        cs = set(c)
        for v in c:
            if any(w in cs for w in T.neighbors(v)):
                raise TopocodeError("loop-risk", f"vertex {v} is adjacent to a same-colored vertex")
    groups.sort(key=min)
    phi = [0] * T.p
    for new, c in enumerate(groups):
        for v in c:
            phi[v] = new
    vc = {new: f.vertex_colors[c[0]] for new, c in enumerate(groups)}
    ec = {}
    for u, v in T.edges:
        e = edge_key(phi[u], phi[v])
        c = f.edge_colors[(u, v)]
        if e in ec and ec[e] != c:
            raise TopocodeError("invalid-graph", f"merged parallel edges {e} carry different colors")
        ec[e] = c
    xy = f.orientation(T)
    X = Y = None
    x_side = None
    if xy is not None:
        xs = {phi[v] for v in xy[0]}
        ys = {phi[v] for v in xy[1]}
        if not xs & ys:
            X, Y = xs, ys
            x_side = frozenset(xs)
    G = Graph.make(len(groups), list(ec), X, Y)
    return G, phi, TotalColoring(vc, ec, f.family, x_side, f.constant)


# ---------------------------------------------------------------- +-e distance

def _vertex_colors(c, p):
    if isinstance(c, TotalColoring):
        return [c.vertex_colors[v] for v in range(p)]
    if isinstance(c, dict):
        return [c[v] for v in range(p)]
    return list(c)


def pm_e_distance(t1: Graph, c1, t2: Graph, c2, bound: int | None = None):
    """Fewest tree-preserving +-e moves turning colored tree t1 into colored tree t2.

    Vertex colors travel with the vertices and edge colors are ignored. The
    target is reached when the current tree and t2 agree up to a
    color-preserving relabeling. None when the distance exceeds `bound`.
    """
    if not (t1.is_tree() and t2.is_tree()):
        raise TopocodeError("not-a-tree")
    if t1.q != t2.q or t1.q > 6:
        raise TopocodeError("bad-parameters", "need equal q <= 6")
    a, b = _vertex_colors(c1, t1.p), _vertex_colors(c2, t2.p)
    if Counter(map(entry_key, a)) != Counter(map(entry_key, b)):
        raise TopocodeError("bad-parameters", "vertex color multisets differ")
    target = canonical_form(t2, vlabels=b)
    if canonical_form(t1, vlabels=a) == target:
        return 0
    seen = {t1.edges}
    frontier = deque([(t1, 0)])
    while frontier:
        t, dist = frontier.popleft()
        if bound is not None and dist >= bound:
            continue
        for _, _, h in pm_tree_moves(t):
            if h.edges in seen:
                continue
            if canonical_form(h, vlabels=a) == target:
                return dist + 1
            seen.add(h.edges)
            frontier.append((h, dist + 1))
    return None
