"""Verification of (k,d)-total colorings, rewrites between families, and related checks."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TopocodeError
from .graph_core import Graph
from .linform import LinForm, as_form, value_at
from .topcode_matrix import entry_key
from .total_coloring import TotalColoring, edge_key

MAGIC_KINDS = ("edge-magic", "edge-difference", "graceful-difference", "felicitous-difference")
FAMILIES = (
    "graceful", "odd-graceful", "edge-antimagic", "harmonious", "odd-elegant",
    *MAGIC_KINDS,
    *(f"odd-edge-{kind}" for kind in MAGIC_KINDS),
    "vd-ek", "vk-ed", "model-graceful", "6C",
)
GRID = ((0, 1), (1, 1), (1, 2), (5, 3), (1000, 1))
SYM = "sym"


@dataclass(frozen=True)
class FamilySpec:
    """Which constraint family to check and how strictly.

    `w` names the per-edge constraint for vd-ek / vk-ed colorings.
    `odd_set_convention` is "odd" for {k+(2i-1)d : i in [1,q]} and "even" for {k+2(i-1)d}.
    `strict_range` also enforces the upper bound k+(q-1)d on Y-colors for edge-magic.
    `matching` lists the edges of a perfect matching for the strongly-graceful variants.
    """

    family: str
    constant: object = None
    strictness: str = "coloring"
    set_ordered: bool = False
    odd_set_convention: str = "odd"
    w: str | None = None
    strict_range: bool = False
    matching: tuple | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise TopocodeError("unknown-family", self.family)
        if self.strictness not in ("labeling", "coloring"):
            raise TopocodeError("unknown-family", f"strictness {self.strictness}")
        if self.odd_set_convention not in ("odd", "even"):
            raise TopocodeError("unknown-family", f"odd set convention {self.odd_set_convention}")


def as_spec(spec) -> FamilySpec:
    return spec if isinstance(spec, FamilySpec) else FamilySpec(spec)


@dataclass
class VerifyReport:
    passed: bool
    constant_found: object = None
    edge_set_found: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    grid: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        def enc(c):
            return c.to_json() if isinstance(c, LinForm) else c

        return {
            "pass": self.passed,
            "constant": enc(self.constant_found),
            "edge_set": [enc(c) for c in self.edge_set_found],
            "violations": [[list(e) if e else None, r] for e, r in self.violations],
            "grid": {f"{k},{d}": ok for (k, d), ok in self.grid.items()},
            "notes": self.notes,
        }


class _Sym:
    """Arithmetic on LinForms with k taken as dominant."""

    symbolic = True

    def __init__(self):
        self.k, self.d = LinForm(1, 0), LinForm(0, 1)

    def conv(self, c):
        if not isinstance(c, LinForm):
            raise TopocodeError("not-symbolic", f"color {c!r} is not a linear form")
        return c

    def lin(self, kc, dc):
        return LinForm(kc, dc)

    def is_x_color(self, v):
        return v.kcoef == 0 and v.dcoef >= 0

    def is_k_color(self, v, lo=0, hi=None):
        return v.kcoef == 1 and v.dcoef >= lo and (hi is None or v.dcoef <= hi)

    def mod_qd(self, v, q):
        if v.kcoef != 0:
            return None
        return LinForm(0, v.dcoef % q)


class _Num:
    """Plain integer arithmetic at fixed (k, d)."""

    symbolic = False

    def __init__(self, k, d):
        if k < 0 or d < 1:
            raise TopocodeError("bad-parameters", "need k >= 0 and d >= 1")
        self.k, self.d = k, d

    def conv(self, c):
        return value_at(c, self.k, self.d)

    def lin(self, kc, dc):
        return kc * self.k + dc * self.d

    def is_x_color(self, v):
        return v >= 0 and v % self.d == 0

    def is_k_color(self, v, lo=0, hi=None):
        r = v - self.k
        if r < lo * self.d or r % self.d:
            return False
        return hi is None or r <= hi * self.d

    def mod_qd(self, v, q):
        return v % (q * self.d)


def _arith(k, d):
    if k == SYM or d == SYM:
        if not (k == SYM and d == SYM):
            raise TopocodeError("bad-parameters", "k and d must both be symbolic")
        return _Sym()
    return _Num(int(k), int(d))


def w_value(kind: str, fx, fy, fe):
    """The quantity a W-magic constraint holds constant on each edge."""
    if kind == "edge-magic":
        return fx + fe + fy
    if kind == "edge-difference":
        return fe + abs(fx - fy)
    if kind == "graceful-difference":
        return abs(abs(fx - fy) - fe)
    if kind == "felicitous-difference":
        return abs(fx + fy - fe)
    if kind == "graceful":
        return abs(fx - fy) - fe
    raise TopocodeError("unknown-family", kind)


def _oriented_edges(g: Graph, f: TotalColoring):
    """(edge, x-end, y-end) triples; without a bipartition the lower id is x."""
    xy = f.orientation(g)
    out = []
    for u, v in g.edges:
        if xy is not None and v in xy[0]:
            out.append(((u, v), v, u))
        else:
            out.append(((u, v), u, v))
    return out, xy


def _edge_target(spec: FamilySpec, ar, q: int):
    fam = spec.family
    odd = fam in ("odd-graceful", "odd-elegant") or fam.startswith("odd-edge-")
    if odd:
        if spec.odd_set_convention == "odd":
            return [ar.lin(1, 2 * i - 1) for i in range(1, q + 1)]
        return [ar.lin(1, 2 * (i - 1)) for i in range(1, q + 1)]
    return [ar.lin(1, i) for i in range(q)]


def _check_model(ar, fx, fy, q):
    diff = fx - fy
    if ar.symbolic:
        if abs(diff.kcoef) == 1 and -diff.dcoef * diff.kcoef >= 2:
            return LinForm(1, q + diff.dcoef * diff.kcoef)
        return abs(diff)
    t = abs(diff)
    if t < ar.k and (ar.k - t) % ar.d == 0 and (ar.k - t) // ar.d >= 2:
        return ar.k + (q - (ar.k - t) // ar.d) * ar.d
    return t


def _verify_core(g: Graph, f: TotalColoring, spec: FamilySpec, ar) -> VerifyReport:
    fam = spec.family
    rep = VerifyReport(True)
    viol = rep.violations
    q = g.q
    if fam == "6C":
        return _verify_6c(g, f, ar)
    vc = {v: ar.conv(c) for v, c in f.vertex_colors.items()}
    ec = {e: ar.conv(c) for e, c in f.edge_colors.items()}
    triples, xy = _oriented_edges(g, f)
    edge_colors = [ec[e] for e in g.edges]
    rep.edge_set_found = sorted(edge_colors, key=entry_key)

    # color domains
    if fam == "vd-ek":
        for v in range(g.p):
            if not ar.is_x_color(vc[v]):
                viol.append((None, f"vertex {v} color outside 0..md"))
        for e in g.edges:
            if not ar.is_k_color(ec[e]):
                viol.append((e, "edge color outside k..k+nd"))
    elif fam == "vk-ed":
        for v in range(g.p):
            if not ar.is_k_color(vc[v]):
                viol.append((None, f"vertex {v} color outside k..k+nd"))
        for e in g.edges:
            if not ar.is_x_color(ec[e]):
                viol.append((e, "edge color outside 0..md"))
    elif xy is not None:
        ymax = None
        if fam in ("graceful", "model-graceful") or (fam == "edge-magic" and spec.strict_range):
            ymax = q - 1
        elif fam == "odd-graceful":
            ymax = 2 * q - 1
        for v in sorted(xy[0]):
            if not ar.is_x_color(vc[v]):
                viol.append((None, f"X-vertex {v} color outside 0..md"))
        for v in sorted(xy[1]):
            if not ar.is_k_color(vc[v], 0, ymax):
                viol.append((None, f"Y-vertex {v} color outside the allowed k-range"))
        for e in g.edges:
            if not ar.is_k_color(ec[e]):
                viol.append((e, "edge color outside k..k+nd"))

    # per-edge constraint
    const = None
    kind = fam[len("odd-edge-"):] if fam.startswith("odd-edge-") else fam
    if fam in ("vd-ek", "vk-ed"):
        kind = spec.w or "edge-difference"
    if kind in ("graceful", "odd-graceful"):
        for e, x, y in triples:
            if ec[e] != abs(vc[x] - vc[y]):
                viol.append((e, "edge color differs from |f(u)-f(v)|"))
    elif kind in ("harmonious", "odd-elegant"):
        mod = q if kind == "harmonious" else 2 * q
        for e, x, y in triples:
            lhs = ar.mod_qd(ec[e] - ar.k, mod)
            rhs = ar.mod_qd(vc[x] + vc[y] - ar.k, mod)
            if lhs is None or rhs is None:
                viol.append((e, "modular constraint not decidable symbolically"))
            elif ec[e] - ar.k != rhs:
                viol.append((e, "f(uv)-k differs from [f(u)+f(v)-k] mod qd"))
    elif kind == "model-graceful":
        for e, x, y in triples:
            if ec[e] != _check_model(ar, vc[x], vc[y], q):
                viol.append((e, "edge color differs from |f(u)-f(v) (mod* qd)|"))
    elif kind == "edge-antimagic":
        sums = [vc[x] + ec[e] + vc[y] for e, x, y in triples]
        lo = min(sums, key=entry_key)
        a2 = lo - ar.lin(2, 0)
        ok_a = ar.is_x_color(a2) and (
            (a2.dcoef % 2 == 0) if ar.symbolic else (a2 % (2 * ar.d) == 0))
        if not ok_a:
            viol.append((None, "smallest edge sum is not 2k+2ad"))
        else:
            a = (a2.dcoef if ar.symbolic else a2 // ar.d) // 2
            want = {ar.lin(2, 2 * (a + i)) for i in range(q)}
            if set(sums) != want or len(set(sums)) != q:
                viol.append((None, "edge sums are not {2k+2ad,...,2k+2(a+q-1)d}"))
            if xy is not None:
                for v in sorted(xy[1]):
                    if not ar.is_k_color(vc[v], a, 3 * a + 2 * q - 2):
                        viol.append((None, f"Y-vertex {v} color outside S(2(a+q-1),k,a,d)"))
            const = ar.lin(2, 2 * a)
    elif kind in MAGIC_KINDS:
        vals = {}
        for e, x, y in triples:
            vals[e] = w_value(kind, vc[x], vc[y], ec[e])
        distinct = set(vals.values())
        if len(distinct) == 1:
            const = next(iter(distinct))
        else:
            common = max(distinct, key=lambda c: (list(vals.values()).count(c), entry_key(c)))
            for e in g.edges:
                if vals[e] != common:
                    viol.append((e, f"{kind} value differs from the common constant"))
        if spec.constant is not None and const is not None and const != ar.conv(spec.constant):
            viol.append((None, f"constant {const} differs from expected {spec.constant}"))
    else:
        raise TopocodeError("unknown-family", fam)
    rep.constant_found = const

    # edge color set
    need_set = fam not in ("vd-ek", "vk-ed", "edge-antimagic")
    if fam in ("vd-ek", "vk-ed") and spec.strictness == "labeling":
        p = g.p
        if fam == "vd-ek":
            vt, et = {ar.lin(0, i) for i in range(p)}, {ar.lin(1, i) for i in range(p)}
        else:
            vt, et = {ar.lin(1, i) for i in range(p)}, {ar.lin(0, i) for i in range(p)}
        if set(vc.values()) != vt:
            viol.append((None, "vertex colors are not the full arithmetic set"))
        if set(edge_colors) != et or len(set(edge_colors)) != len(edge_colors):
            viol.append((None, "edge colors are not the full arithmetic set"))
    if need_set:
        target = _edge_target(spec, ar, q)
        if len(set(edge_colors)) != q or set(edge_colors) != set(target):
            viol.append((None, "edge color set is not the required arithmetic set"))
    if spec.strictness == "labeling" and len(set(vc.values())) != g.p:
        viol.append((None, "vertex colors are not pairwise distinct"))
    if spec.set_ordered:
        if xy is None:
            viol.append((None, "set-ordered check needs a bipartition"))
        elif xy[0] and xy[1]:
            mx = max((vc[v] for v in xy[0]), key=entry_key)
            my = min((vc[v] for v in xy[1]), key=entry_key)
            if not entry_key(mx) < entry_key(my):
                viol.append((None, "max f(X) is not below min f(Y)"))
    if spec.matching:
        top = ar.lin(1, q - 1 if fam == "graceful" else 2 * q - 1)
        for u, v in spec.matching:
            if vc[u] + vc[v] != top:
                viol.append((edge_key(u, v), "matching edge sum differs"))
    rep.passed = not viol
    return rep


def verify(g: Graph, f: TotalColoring, spec, k=SYM, d=SYM) -> VerifyReport:
    """Check f against a family; k and d are integers or "sym".

    In symbolic mode the verdict holds as an identity in k and d with k
    dominating every d-multiple; the report also carries the concrete verdict
    at each point of a small (k, d) grid as a cross-check.
    """
    spec = as_spec(spec)
    f.check_total(g)
    ar = _arith(k, d)
    rep = _verify_core(g, f, spec, ar)
    if ar.symbolic:
        for k0, d0 in GRID:
            try:
                rep.grid[(k0, d0)] = _verify_core(g, f, spec, _Num(k0, d0)).passed
            except TopocodeError:
                rep.grid[(k0, d0)] = False
    return rep


# ---------------------------------------------------------------- 6C labelings

def _verify_6c(g: Graph, f: TotalColoring, ar) -> VerifyReport:
    """Six conditions on the integer labeling: e-magic, ee-difference, ee-balanced,
    EV-ordered, ve-matching and set-ordered."""
    rep = VerifyReport(True)
    viol = rep.violations
    p, q = g.p, g.q
    n = p + q
    vc = {v: ar.conv(c) for v, c in f.vertex_colors.items()}
    ec = {e: ar.conv(c) for e, c in f.edge_colors.items()}
    if ar.symbolic:
        raise TopocodeError("concrete-only", "6C labelings are checked on integer values")
    allv = list(vc.values()) + list(ec.values())
    if sorted(allv) != list(range(1, n + 1)):
        viol.append((None, "labels are not a bijection onto [1,p+q]"))
    xy = f.orientation(g)
    triples, _ = _oriented_edges(g, f)
    # e-magic
    vals = {ec[e] + abs(vc[x] - vc[y]) for e, x, y in triples}
    if len(vals) != 1:
        viol.append((None, "e-magic: f(uv)+|f(u)-f(v)| is not constant"))
    else:
        rep.constant_found = next(iter(vals))
    # ee-difference
    diffs = {e: abs(vc[x] - vc[y]) for e, x, y in triples}
    for e in g.edges:
        if not any(o != e and (ec[e] == diffs[o] or ec[e] == 2 * n - diffs[o]) for o in g.edges):
            viol.append((e, "ee-difference: no matching edge"))
    # ee-balanced
    s = {e: diffs[e] - ec[e] for e in g.edges}
    cands = set()
    for a in g.edges:
        for b in g.edges:
            if a != b:
                cands.add(s[a] + s[b])
                cands.add(2 * n + s[a] + s[b])
    ok3 = any(all(any(o != e and (s[e] + s[o] == kk or 2 * n + s[e] + s[o] == kk)
                      for o in g.edges) for e in g.edges) for kk in sorted(cands))
    if not ok3 and q > 1:
        viol.append((None, "ee-balanced: no balancing constant"))
    if q == 1:
        viol.append((None, "ee-balanced: a single edge has no partner"))
    # EV-ordered
    V, E = set(vc.values()), set(ec.values())
    ev = (min(V) > max(E) or max(V) < min(E) or V <= E or E <= V
          or (all(x % 2 for x in V) and all(x % 2 == 0 for x in E)))
    if not ev:
        viol.append((None, "EV-ordered: not EV-ordered"))
    # ve-matching
    singular = (p + q + 1) // 2
    cands = {ec[e] + vc[w] for e in g.edges for w in range(p)}
    ok5 = False
    for kk in sorted(cands):
        if all(any(ec[e] + vc[w] == kk for w in range(p)) for e in g.edges) and \
                all(vc[z] == singular or any(vc[z] + ec[e] == kk for e in g.edges) for z in range(p)):
            ok5 = True
            break
    if not ok5:
        viol.append((None, "ve-matching: no ve-matching constant"))
    # set-ordered
    if xy is None:
        viol.append((None, "set-ordered: graph is not bipartite"))
    else:
        fx = [vc[v] for v in xy[0]]
        fy = [vc[v] for v in xy[1]]
        if not (max(fx) < min(fy) or min(fx) > max(fy)):
            viol.append((None, "set-ordered: not set-ordered"))
    rep.edge_set_found = sorted(E)
    rep.passed = not viol
    return rep


# ---------------------------------------------------------------- transformations

def _sorted_side(items, colors):
    return sorted(items, key=lambda v: (entry_key(colors[v]), v))


def _mirror(keys, colors):
    """Map each key to max+min-color of the group."""
    if not keys:
        return {}
    vals = [colors[k] for k in keys]
    hi = max(vals, key=entry_key)
    lo = min(vals, key=entry_key)
    return {k: hi + lo - colors[k] for k in keys}


def _reverse(keys, colors):
    order = _sorted_side(keys, colors)
    n = len(order)
    return {order[i]: colors[order[n - 1 - i]] for i in range(n)}


def _move_number(move) -> int:
    if isinstance(move, int):
        n = move
    else:
        s = str(move).strip().lower()
        n = int(s.split("-")[-1]) if s.startswith("tra") else int(s)
    if not 1 <= n <= 11:
        raise TopocodeError("unknown-move", str(move))
    return n


def transform(f: TotalColoring, g: Graph, moves) -> TotalColoring:
    """Apply rewrite moves 1..11 in order.

    1-4 keep V, X, Y, E. 5 mirrors all vertex colors about max+min of V,
    6 mirrors edge colors, 7 X-colors, 8 Y-colors. 9-11 reverse the sorted
    order of edges, X and Y (ties broken by id).
    """
    f.check_total(g)
    xy = f.orientation(g)
    vc = dict(f.vertex_colors)
    ec = dict(f.edge_colors)
    for mv in moves:
        n = _move_number(mv)
        if n in (7, 8, 10, 11) and xy is None:
            raise TopocodeError("needs-bipartition", f"move {n}")
        if n <= 4:
            continue
        if n == 5:
            vc.update(_mirror(list(range(g.p)), vc))
        elif n == 6:
            ec.update(_mirror(list(g.edges), ec))
        elif n == 7:
            vc.update(_mirror(sorted(xy[0]), vc))
        elif n == 8:
            vc.update(_mirror(sorted(xy[1]), vc))
        elif n == 9:
            ec.update(_reverse(list(g.edges), ec))
        elif n == 10:
            vc.update(_reverse(sorted(xy[0]), vc))
        elif n == 11:
            vc.update(_reverse(sorted(xy[1]), vc))
    return TotalColoring(vc, ec, f.family, f.x_side)


DERIVABLE = ("graceful", "edge-magic", "edge-difference", "graceful-difference",
             "felicitous-difference", "harmonious", "edge-antimagic")


def derive_equivalent(f: TotalColoring, g: Graph, target) -> TotalColoring:
    """Rewrite a graceful coloring into an equivalent coloring of another family.

    Needs a graceful coloring with linear-form colors and min f(X) = 0. The
    returned coloring carries the family constant in `constant`.
    """
    fam = target.family if isinstance(target, FamilySpec) else str(target)
    if fam not in DERIVABLE:
        raise TopocodeError("not-derivable", f"no rewrite to {fam}")
    xy = f.orientation(g)
    if xy is None or not xy[0] or not xy[1]:
        raise TopocodeError("not-derivable", "needs a bipartite graph with both sides")
    if not all(isinstance(c, LinForm) for c in list(f.vertex_colors.values()) + list(f.edge_colors.values())):
        raise TopocodeError("not-derivable", "colors must be linear forms")
    rep = verify(g, f, "graceful")
    if not rep.passed:
        raise TopocodeError("not-derivable", "input is not a graceful (k,d)-total coloring")
    X, Y = sorted(xy[0]), sorted(xy[1])
    vc, ec = f.vertex_colors, f.edge_colors
    xs = _sorted_side(X, vc)
    ys = _sorted_side(Y, vc)
    if vc[xs[0]] != LinForm(0, 0):
        raise TopocodeError("not-derivable", "smallest X-color must be 0")
    q = g.q
    k = LinForm(1, 0)
    top_e = LinForm(2, q - 1)  # f(e_1) + f(e_q)
    fy1, fyt, fxs = vc[ys[0]], vc[ys[-1]], vc[xs[-1]]
    nv, ne = dict(vc), dict(ec)
    if fam == "graceful":
        const = None
    elif fam == "edge-magic":
        nv.update(_mirror(X, vc))
        ne = {e: top_e - c for e, c in ec.items()}
        const = top_e + fxs
    elif fam == "edge-difference":
        ne = {e: top_e - c for e, c in ec.items()}
        const = top_e
    elif fam == "graceful-difference":
        const = LinForm(0, 0)
    elif fam == "felicitous-difference":
        nv.update(_mirror(Y, vc))
        ne = {e: top_e - c for e, c in ec.items()}
        const = fy1 - k
    elif fam == "harmonious":
        nv.update(_mirror(Y, vc))
        ne = {}
        for (u, v) in g.edges:
            s = nv[u] + nv[v] - k
            if s.kcoef != 0:
                raise TopocodeError("not-derivable", "unexpected k-term in harmonious sum")
            ne[(u, v)] = k + LinForm(0, s.dcoef % q)
        const = None
    else:  # edge-antimagic
        for y in Y:
            nv[y] = fyt + k - vc[y]
        ne = {e: top_e - c for e, c in ec.items()}
        const = LinForm(2, 0)
    out = TotalColoring(nv, ne, fam, f.x_side)
    out.constant = const
    return out


# ---------------------------------------------------------------- duality, twins, (abc)

def _constant_form(values):
    forms = {as_form(v) for v in values}
    if len(forms) != 1:
        return None
    return next(iter(forms))


def check_duality(f: TotalColoring, g: TotalColoring, mapping=None, mode: str = "vertex"):
    """Are f(x) + g(theta(x)) constant (vertex mode), f(e) + g(theta(e)) (edge), or both (ve)?

    Returns (ok, a, b, r, s): vertex sums a*k + r*d and edge sums b*k + s*d,
    with None for parts not checked or not constant.
    """
    if mode not in ("vertex", "edge", "ve"):
        raise TopocodeError("bad-mode", mode)
    vmap = mapping if mapping is not None else {v: v for v in f.vertex_colors}
    a = r = b = s = None
    ok = True
    if mode in ("vertex", "ve"):
        if len(f.vertex_colors) != len(g.vertex_colors):
            return False, None, None, None, None
        c = _constant_form(as_form(f.vertex_colors[v]) + as_form(g.vertex_colors[vmap[v]])
                           for v in f.vertex_colors)
        if c is None:
            ok = False
        else:
            a, r = c.kcoef, c.dcoef
    if mode in ("edge", "ve"):
        if len(f.edge_colors) != len(g.edge_colors):
            return False, a, None, r, None
        sums = []
        for (u, v), col in f.edge_colors.items():
            key = edge_key(vmap[u], vmap[v])
            if key not in g.edge_colors:
                return False, a, None, r, None
            sums.append(as_form(col) + as_form(g.edge_colors[key]))
        c = _constant_form(sums)
        if c is None:
            ok = False
        else:
            b, s = c.kcoef, c.dcoef
    return ok, a, b, r, s


def check_twin(f: TotalColoring, g: TotalColoring, k: int, d: int, q: int | None = None) -> bool:
    """Do f and g split S(q-1,0,0,d) | S(q-1,k,0,d) exactly, as sets?"""
    if q is None:
        q = len(f.edge_colors)
    whole = {i * d for i in range(q)} | {k + i * d for i in range(q)}
    fv = {value_at(c, k, d) for c in list(f.vertex_colors.values()) + list(f.edge_colors.values())}
    gv = {value_at(c, k, d) for c in list(g.vertex_colors.values()) + list(g.edge_colors.values())}
    return (whole - fv) == gv


def abc_value(kind: str, a: int, b: int, c: int, fu, fv, fe):
    if kind == "edge-magic":
        return fu * a + fv * b + fe * c
    if kind == "edge-difference":
        return fe * c + abs(fu * a - fv * b)
    if kind == "felicitous-difference":
        return abs(fu * a + fv * b - fe * c)
    if kind == "graceful-difference":
        return abs(abs(fu * a - fv * b) - fe * c)
    raise TopocodeError("unknown-family", kind)


def abc_constraint(g: Graph, f: TotalColoring, a: int, b: int, c: int, kind: str,
                   k=SYM, d=SYM):
    """(max - min of the (abc) function over edges, common value or None)."""
    f.check_total(g)
    ar = _arith(k, d)
    triples, _ = _oriented_edges(g, f)
    vals = [abc_value(kind, a, b, c, ar.conv(f.vertex_colors[x]), ar.conv(f.vertex_colors[y]),
                      ar.conv(f.edge_colors[e])) for e, x, y in triples]
    if not vals:
        return 0, None
    hi = max(vals, key=entry_key)
    lo = min(vals, key=entry_key)
    spread = hi - lo
    return spread, (hi if spread == (LinForm(0, 0) if ar.symbolic else 0) else None)
