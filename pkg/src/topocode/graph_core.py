"""Simple undirected graphs on dense integer ids and the structural operations on them."""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product

from .errors import TopocodeError

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A (p,q)-graph: vertices 0..p-1, sorted edge tuple, optional bipartition."""

    p: int
    edges: tuple[Edge, ...]
    X: frozenset | None = None
    Y: frozenset | None = None

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise TopocodeError("invalid-graph", f"loop at {u}")
            if not (0 <= u < self.p and 0 <= v < self.p):
                raise TopocodeError("invalid-graph", f"edge {(u, v)} out of range")
            if (u, v) in seen or u > v:
                raise TopocodeError("invalid-graph", f"edge {(u, v)} repeated or unsorted")
            seen.add((u, v))
        if (self.X is None) != (self.Y is None):
            raise TopocodeError("invalid-graph", "bipartition needs both sides")
        if self.X is not None:
            if self.X & self.Y or (self.X | self.Y) != set(range(self.p)):
                raise TopocodeError("invalid-graph", "bipartition must split the vertex set")
            for u, v in self.edges:
                if (u in self.X) == (v in self.X):
                    raise TopocodeError("invalid-graph", f"edge {(u, v)} inside one side")

    @classmethod
    def make(cls, p: int, edges, X=None, Y=None) -> "Graph":
        edges = list(edges)
        es = tuple(sorted({_edge(int(u), int(v)) for u, v in edges}))
        if len(es) != len(edges):
            raise TopocodeError("invalid-graph", "parallel edges")
        return cls(p, es, None if X is None else frozenset(X), None if Y is None else frozenset(Y))

    @property
    def q(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb = [[] for _ in range(self.p)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edge_set

    def _check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < self.p):
            raise TopocodeError("no-such-vertex", str(v))

    def leaves(self) -> list[int]:
        return [v for v in range(self.p) if len(self.adj[v]) == 1]

    def components(self) -> list[list[int]]:
        seen = [False] * self.p
        comps = []
        for s in range(self.p):
            if seen[s]:
                continue
            seen[s] = True
            comp, dq = [], deque([s])
            while dq:
                u = dq.popleft()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        dq.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.p > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.p >= 1 and self.q == self.p - 1 and self.is_connected()

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.p
        dist[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    dq.append(w)
        return dist

    def diameter(self) -> int:
        if not self.is_connected():
            raise TopocodeError("not-connected")
        return max(max(self.distances_from(s)) for s in range(self.p))

    def is_star(self) -> bool:
        """K_{1,n} with n >= 1 (K_2 counts)."""
        return self.is_tree() and self.p >= 2 and self.diameter() <= 2

    def two_coloring(self) -> tuple[frozenset, frozenset] | None:
        """BFS 2-coloring; the lowest id of each component goes to X."""
        side = [-1] * self.p
        for comp in self.components():
            s = min(comp)
            side[s] = 0
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for w in self.adj[u]:
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        dq.append(w)
                    elif side[w] == side[u]:
                        return None
        return (frozenset(v for v in range(self.p) if side[v] == 0),
                frozenset(v for v in range(self.p) if side[v] == 1))

    def bipartition(self) -> tuple[frozenset, frozenset] | None:
        if self.X is not None:
            return self.X, self.Y
        return self.two_coloring()

    def with_bipartition(self, X=None, Y=None) -> "Graph":
        if X is None:
            xy = self.bipartition()
            if xy is None:
                raise TopocodeError("not-bipartite")
            X, Y = xy
        elif Y is None:
            Y = set(range(self.p)) - set(X)
        return Graph(self.p, self.edges, frozenset(X), frozenset(Y))

    def without_bipartition(self) -> "Graph":
        return Graph(self.p, self.edges)

    def to_json(self) -> dict:
        out = {"p": self.p, "q": self.q, "edges": [list(e) for e in self.edges]}
        xy = self.bipartition()
        if xy is not None:
            out["X"] = sorted(xy[0])
            out["Y"] = sorted(xy[1])
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        edges = [tuple(e) for e in data["edges"]]
        p = data.get("p")
        if p is None:
            p = 1 + max((max(e) for e in edges), default=-1)
        g = cls.make(p, edges, data.get("X"), data.get("Y"))
        if "q" in data and data["q"] != g.q:
            raise TopocodeError("invalid-graph", "q does not match edge count")
        return g


def path_graph(n: int) -> Graph:
    return Graph.make(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """K_{1,n} with center 0."""
    return Graph.make(n + 1, [(0, j) for j in range(1, n + 1)])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}: X = 0..m-1, Y = m..m+n-1."""
    return Graph.make(m + n, [(i, m + j) for i in range(m) for j in range(n)],
                      range(m), range(m, m + n))


def complete_graph(n: int) -> Graph:
    return Graph.make(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.make(n, [(i, (i + 1) % n) for i in range(n)])


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n == 1:
        return Graph(1, ())
    if n == 2:
        return Graph.make(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return tree_from_pruefer(seq)


def tree_from_pruefer(seq) -> Graph:
    n = len(seq) + 2
    deg = [1] * n
    for a in seq:
        deg[a] += 1
    edges = []
    for a in seq:
        leaf = min(v for v in range(n) if deg[v] == 1)
        edges.append((leaf, a))
        deg[leaf] -= 1
        deg[a] -= 1
    u, v = [x for x in range(n) if deg[x] == 1]
    edges.append((u, v))
    return Graph.make(n, edges)


def relabel(g: Graph, new_id: dict[int, int]) -> Graph:
    """Apply a bijection old id -> new id."""
    edges = [(new_id[u], new_id[v]) for u, v in g.edges]
    X = Y = None
    if g.X is not None:
        X = {new_id[v] for v in g.X}
        Y = {new_id[v] for v in g.Y}
    return Graph.make(g.p, edges, X, Y)


def bfs_order(g: Graph) -> list[int]:
    order = []
    seen = [False] * g.p
    for s in range(g.p):
        if seen[s]:
            continue
        seen[s] = True
        dq = deque([s])
        while dq:
            u = dq.popleft()
            order.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
    return order


def normalize_bfs(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Renumber vertices in BFS order from the lowest id; returns (graph, old->new)."""
    new_id = {old: i for i, old in enumerate(bfs_order(g))}
    return relabel(g, new_id), new_id


def induced_subgraph(g: Graph, keep) -> tuple[Graph, list[int]]:
    """Induced subgraph on `keep`, renumbered by ascending old id; returns (graph, new->old)."""
    old = sorted(keep)
    pos = {v: i for i, v in enumerate(old)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    X = Y = None
    if g.X is not None:
        X = {pos[v] for v in old if v in g.X}
        Y = {pos[v] for v in old if v in g.Y}
    return Graph.make(len(old), edges, X, Y), old


# ---------------------------------------------------------------- structural ops

def vertex_split(g: Graph, v: int, parts, return_map: bool = False):
    """Replace v by one vertex per part; part i is joined to exactly parts[i].

    The first part keeps id v, later parts get fresh ids p, p+1, ...
    With return_map the new->old vertex map is returned too.
    """
    g._check_vertex(v)
    parts = [set(part) for part in parts]
    nb = set(g.adj[v])
    if not parts or any(not part for part in parts):
        raise TopocodeError("invalid-partition", "empty part")
    union = set()
    for part in parts:
        if union & part:
            raise TopocodeError("invalid-partition", "parts overlap")
        union |= part
    if union != nb:
        raise TopocodeError("invalid-partition", "parts must cover N(v)")
    owner = {}
    for i, part in enumerate(parts):
        for w in part:
            owner[w] = v if i == 0 else g.p + i - 1
    edges = []
    for a, b in g.edges:
        if a == v:
            a = owner[b]
        elif b == v:
            b = owner[a]
        edges.append((a, b))
    p = g.p + len(parts) - 1
    back = list(range(g.p)) + [v] * (len(parts) - 1)
    X = Y = None
    if g.X is not None:
        X = {u for u in range(p) if back[u] in g.X}
        Y = set(range(p)) - X
    out = Graph.make(p, edges, X, Y)
    return (out, back) if return_map else out


def vertex_split_to_tree(g: Graph, seed: int = 0) -> tuple[Graph, list[int]]:
    """Split vertices of a connected graph until it is a tree on q+1 vertices.

    A seeded random spanning tree is kept; each other edge uv gets a fresh copy
    of one endpoint (chosen by the seed) hanging off the other endpoint.
    Returns (tree, map tree vertex -> g vertex); the map is a homomorphism.
    """
    if not g.is_connected():
        raise TopocodeError("not-connected")
    rng = random.Random(seed)
    order = list(g.edges)
    rng.shuffle(order)
    parent = list(range(g.p))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree_edges, extra = [], []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree_edges.append((u, v))
        else:
            extra.append((u, v))
    back = list(range(g.p))
    for u, v in sorted(extra):
        if rng.random() < 0.5:
            u, v = v, u
        new = len(back)
        back.append(v)
        tree_edges.append((u, new))
    X = Y = None
    if g.X is not None:
        X = {w for w in range(len(back)) if back[w] in g.X}
        Y = set(range(len(back))) - X
    return Graph.make(len(back), tree_edges, X, Y), back


def vertex_coincide(g: Graph, u: int, v: int, return_map: bool = False):
    """Merge non-adjacent u and v into min(u, v); ids above max(u, v) shift down by one.

    Parallel edges collapse to one. With return_map the old->new map is returned.
    """
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise TopocodeError("invalid-move", "cannot coincide a vertex with itself")
    if g.has_edge(u, v):
        raise TopocodeError("would-create-loop", f"{u} and {v} are adjacent")
    keep, gone = min(u, v), max(u, v)
    fwd = {}
    for w in range(g.p):
        if w == gone:
            fwd[w] = keep
        else:
            fwd[w] = w - 1 if w > gone else w
    edges = {_edge(fwd[a], fwd[b]) for a, b in g.edges}
    X = Y = None
    if g.X is not None and (u in g.X) == (v in g.X):
        X = {fwd[w] for w in g.X}
        Y = {fwd[w] for w in g.Y}
    out = Graph.make(g.p - 1, edges, X, Y)
    return (out, fwd) if return_map else out


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.p
    edges = list(g1.edges) + [(a + off, b + off) for a, b in g2.edges]
    X = Y = None
    b1, b2 = g1.bipartition(), g2.bipartition()
    if b1 is not None and b2 is not None:
        X = set(b1[0]) | {w + off for w in b2[0]}
        Y = set(b1[1]) | {w + off for w in b2[1]}
    return Graph.make(g1.p + g2.p, edges, X, Y)


def edge_join(g1: Graph, g2: Graph, u: int, x: int) -> Graph:
    """Disjoint union of g1 and g2 (g2 ids shifted by p1) plus the edge u-x."""
    g1._check_vertex(u)
    g2._check_vertex(x)
    g = disjoint_union(g1, g2)
    a, b = u, x + g1.p
    X = Y = None
    if g.X is not None:
        X, Y = set(g.X), set(g.Y)
        if (a in X) == (b in X):
            # flip the second component so the new edge crosses sides
            for w in range(g1.p, g.p):
                if w in X:
                    X.discard(w)
                    Y.add(w)
                else:
                    Y.discard(w)
                    X.add(w)
    return Graph.make(g.p, list(g.edges) + [(a, b)], X, Y)


@dataclass(frozen=True)
class LeafPlan:
    """How many leaves to hang on each vertex; `counts` is a sorted tuple of (vertex, count)."""

    counts: tuple[tuple[int, int], ...] = ()
    seed: int | None = None

    @classmethod
    def from_dict(cls, counts: dict, seed=None) -> "LeafPlan":
        return cls(tuple(sorted((int(v), int(c)) for v, c in counts.items() if c)), seed)

    @classmethod
    def random(cls, g: Graph, m: int, seed: int, vertices=None) -> "LeafPlan":
        """m leaves, each on a vertex drawn uniformly (from `vertices` if given)."""
        rng = random.Random(seed)
        pool = sorted(vertices) if vertices is not None else list(range(g.p))
        tally = {}
        for _ in range(m):
            v = rng.choice(pool)
            tally[v] = tally.get(v, 0) + 1
        return cls.from_dict(tally, seed)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def split_totals(self, X) -> tuple[int, int]:
        """(A, B): leaves planned on X-side and on Y-side vertices."""
        a = sum(c for v, c in self.counts if v in X)
        return a, self.total - a


def add_leaves(g: Graph, plan: LeafPlan, return_owner: bool = False):
    """Append plan.total new degree-1 vertices; vertex order by host id, then count.

    With return_owner the list of (new vertex, host) is returned too.
    """
    for v, c in plan.counts:
        g._check_vertex(v)
        if c < 0:
            raise TopocodeError("invalid-plan", "negative leaf count")
    edges = list(g.edges)
    owner = []
    nxt = g.p
    for v, c in plan.counts:
        for _ in range(c):
            edges.append((v, nxt))
            owner.append((nxt, v))
            nxt += 1
    X = Y = None
    if g.X is not None:
        X, Y = set(g.X), set(g.Y)
        for w, host in owner:
            (Y if host in X else X).add(w)
    out = Graph.make(nxt, edges, X, Y)
    return (out, owner) if return_owner else out


def remove_vertices(g: Graph, drop) -> Graph:
    keep = set(range(g.p)) - set(drop)
    return induced_subgraph(g, keep)[0]


# ---------------------------------------------------------------- peeling

@dataclass(frozen=True)
class PeelStep:
    vertices: frozenset  # original ids of T_i
    removed: frozenset  # leaves of T_i removed to get T_{i+1}; empty for the final star


@dataclass(frozen=True)
class PeelTrace:
    source: Graph
    steps: tuple[PeelStep, ...]

    def __len__(self):
        return len(self.steps)

    def tree(self, i: int) -> tuple[Graph, list[int]]:
        """T_{i+1} as a dense graph plus its new->original id map."""
        return induced_subgraph(self.source, self.steps[i].vertices)

    @property
    def levels(self) -> list[tuple[Graph, frozenset]]:
        return [(self.tree(i)[0], s.removed) for i, s in enumerate(self.steps)]


def peel_leaves(t: Graph) -> PeelTrace:
    """Strip all leaves repeatedly until a star remains; len = ceil(D/2)."""
    if not t.is_tree():
        raise TopocodeError("not-a-tree")
    if t.p < 2:
        raise TopocodeError("not-a-tree", "need diameter at least 1")
    alive = set(range(t.p))
    steps = []
    while True:
        sub, old = induced_subgraph(t, alive)
        if sub.is_star():
            steps.append(PeelStep(frozenset(alive), frozenset()))
            break
        leaves = frozenset(old[v] for v in sub.leaves())
        steps.append(PeelStep(frozenset(alive), leaves))
        alive -= leaves
    return PeelTrace(t, tuple(steps))


def count_partitions(m: int, k: int) -> int:
    """Partitions of m into parts of size at most k, by A(m,k)=A(m,k-1)+A(m-k,k)."""
    if m < 0 or k < 0:
        raise TopocodeError("domain-error", "negative argument")
    table = [1] + [0] * m  # A(., 0)
    for part in range(1, k + 1):
        for n in range(part, m + 1):
            table[n] += table[n - part]
    return table[m]


def degree_histogram(g: Graph) -> dict[int, int]:
    out = {}
    for v in range(g.p):
        out[len(g.adj[v])] = out.get(len(g.adj[v]), 0) + 1
    return out


def leaf_count_identity(t: Graph) -> tuple[int, int]:
    """(n_1, 2 + sum_{d>=2} (d-2) n_d) for a tree with at least two vertices."""
    h = degree_histogram(t)
    return h.get(1, 0), 2 + sum((deg - 2) * n for deg, n in h.items() if deg >= 2)


# ---------------------------------------------------------------- +-e moves

def pm_edge_op(t: Graph, remove, add) -> tuple[Graph, bool]:
    """G - uv + xy; returns the graph and whether it is a tree."""
    r = _edge(*remove)
    a = _edge(*add)
    if r not in t.edge_set:
        raise TopocodeError("invalid-move", f"{r} is not an edge")
    if a[0] == a[1] or not (0 <= a[0] and a[1] < t.p):
        raise TopocodeError("invalid-move", f"bad pair {a}")
    if a != r and a in t.edge_set:
        raise TopocodeError("invalid-move", f"{a} already an edge")
    edges = [e for e in t.edges if e != r] + [a]
    g = Graph.make(t.p, edges)
    return g, g.is_tree()


def pm_tree_moves(t: Graph):
    """All trees t - e + f with f a non-edge, as (removed, added, tree)."""
    out = []
    for r in t.edges:
        for a in range(t.p):
            for b in range(a + 1, t.p):
                if (a, b) in t.edge_set:
                    continue
                g, ok = pm_edge_op(t, r, (a, b))
                if ok:
                    out.append((r, (a, b), g))
    return out


@dataclass
class PmTreeSet:
    one_step: list  # representatives reachable by a single move
    closure: list  # representatives reached by BFS, in discovery order
    distance: dict  # canonical key -> move count from t
    partial: bool = False


def enumerate_pm_tree_set(t: Graph, max_nodes: int = 10_000, labeled: bool = False) -> PmTreeSet:
    """One-move neighborhood and BFS closure of t under tree-preserving +-e moves.

    Trees are identified up to isomorphism unless `labeled`.
    """
    if not t.is_tree():
        raise TopocodeError("not-a-tree")

    def key(g):
        return g.edges if labeled else canonical_form(g)

    k0 = key(t)
    dist = {k0: 0}
    closure = [t]
    one = {}
    for _, _, g in pm_tree_moves(t):
        kg = key(g)
        if kg != k0 and kg not in one:
            one[kg] = g
    dq = deque([t])
    partial = False
    while dq:
        g = dq.popleft()
        dg = dist[key(g)]
        for _, _, h in pm_tree_moves(g):
            kh = key(h)
            if kh in dist:
                continue
            if len(dist) >= max_nodes:
                partial = True
                break
            dist[kh] = dg + 1
            closure.append(h)
            dq.append(h)
        if partial:
            break
    return PmTreeSet(list(one.values()), closure, dist, partial)


# ---------------------------------------------------------------- canonical forms

CANON_SEARCH_LIMIT = math.factorial(10)


def _lab_key(x):
    if x is None:
        return (0,)
    if hasattr(x, "kcoef"):
        return (1, x.kcoef, x.dcoef)
    if isinstance(x, (tuple, list, frozenset, set)):
        return (2,) + tuple(sorted(_lab_key(y) for y in x))
    return (3, x)


def _tree_canon(g: Graph, vl, el):
    """AHU encoding rooted at the center(s); labels folded in."""
    if g.p == 1:
        return ("T", _lab_key(vl(0)), ())
    deg = [len(a) for a in g.adj]
    layer = [v for v in range(g.p) if deg[v] <= 1]
    left = g.p
    removed = [False] * g.p
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            removed[v] = True
            for w in g.adj[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = [v for v in range(g.p) if not removed[v]]

    def enc(v, parent):
        kids = sorted(
            (_lab_key(el(_edge(v, w))), enc(w, v)) for w in g.adj[v] if w != parent)
        return (_lab_key(vl(v)), tuple(kids))

    if len(centers) == 1:
        return ("T1", enc(centers[0], -1))
    a, b = centers
    ea, eb = enc(a, b), enc(b, a)
    lo, hi = sorted([ea, eb])
    return ("T2", _lab_key(el(_edge(a, b))), lo, hi)


def canonical_form(g: Graph, vlabels=None, elabels=None):
    """Isomorphism-invariant key, optionally respecting vertex and edge labels.

    Trees use a rooted encoding. Other graphs use color refinement followed by
    exhaustive search over orderings inside each refined cell; when that search
    would exceed 10! orderings the call refuses with 'too-large'.
    """
    vl = (lambda v: vlabels[v]) if vlabels is not None else (lambda v: None)
    el = (lambda e: elabels[e]) if elabels is not None else (lambda e: None)
    if g.is_tree():
        return _tree_canon(g, vl, el)
    n = g.p
    color = [(_lab_key(vl(v)), len(g.adj[v])) for v in range(n)]
    while True:
        sig = [(color[v], tuple(sorted((color[w], _lab_key(el(_edge(v, w)))) for w in g.adj[v])))
               for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[sig[v]] for v in range(n)]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells = {}
    for v in range(n):
        cells.setdefault(color[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    size = 1
    for c in cell_list:
        size *= math.factorial(len(c))
    if size > CANON_SEARCH_LIMIT:
        raise TopocodeError("too-large", "canonical form search space exceeds 10!")
    best = None
    vkeys = None
    for combo in product(*(permutations(c) for c in cell_list)):
        order = [v for perm in combo for v in perm]
        pos = {v: i for i, v in enumerate(order)}
        es = tuple(sorted((*_edge(pos[a], pos[b]), _lab_key(el((a, b)))) for a, b in g.edges))
        if best is None or es < best:
            best = es
            vkeys = tuple(_lab_key(vl(v)) for v in order)
    return ("G", n, vkeys, best)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if (g1.p, g1.q) != (g2.p, g2.q):
        return False
    return canonical_form(g1) == canonical_form(g2)
