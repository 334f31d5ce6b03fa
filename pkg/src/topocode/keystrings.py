"""Digit strings read off integer matrices, and rebuilding matrices from such strings."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce

from .coloring_engine import FamilySpec, as_spec, verify
from .errors import TopocodeError
from .graph_core import Graph
from .topcode_matrix import TopcodeMatrix, graphs_from_matrix
from .total_coloring import TotalColoring

UNSUPPORTED = ("vd-ek", "vk-ed", "6C")


# ---------------------------------------------------------------- cell orders

def cells(m: TopcodeMatrix) -> list[int]:
    """Entries in row-major order; all must be nonnegative integers."""
    out = []
    for row in m.rows():
        for c in row:
            if not isinstance(c, int):
                raise TopocodeError("not-integer", "evaluate the matrix first")
            if c < 0:
                raise TopocodeError("negative-entry", str(c))
            out.append(c)
    return out


def permutation_from_index(index: int, n: int) -> list[int]:
    """The index-th permutation of range(n) in lexicographic order (factorial number system)."""
    if not 0 <= index < math.factorial(n):
        raise TopocodeError("index-out-of-range", f"{index} not below {n}!")
    pool = list(range(n))
    out = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        pos, index = divmod(index, f)
        out.append(pool.pop(pos))
    return out


def resolve_order(order, n: int) -> list[int]:
    if order is None or order == "rowmajor":
        return list(range(n))
    if isinstance(order, int):
        return permutation_from_index(order, n)
    perm = [int(i) for i in order]
    if sorted(perm) != list(range(n)):
        raise TopocodeError("bad-parameters", "order is not a permutation of the cells")
    return perm


def string_from_matrix(m: TopcodeMatrix, order="rowmajor") -> str:
    """Concatenate decimal entries; `order` is "rowmajor", a cell permutation or a permutation index."""
    vals = cells(m)
    perm = resolve_order(order, len(vals))
    return "".join(str(vals[i]) for i in perm)


def string_multiset_equal(s1: str, s2: str) -> bool:
    return Counter(s1) == Counter(s2)


def order_count_bound(m: TopcodeMatrix) -> int:
    """Number of cell orders, (3q)!."""
    return math.factorial(3 * m.q)


def _multiset_permutations(items):
    cnt = Counter(items)
    keys = sorted(cnt)
    n = len(items)
    cur = []

    def rec():
        if len(cur) == n:
            yield tuple(cur)
            return
        for key in keys:
            if cnt[key]:
                cnt[key] -= 1
                cur.append(key)
                yield from rec()
                cur.pop()
                cnt[key] += 1

    yield from rec()


def distinct_string_count(m: TopcodeMatrix, limit: int = 2_000_000) -> int:
    """Exact number of distinct strings over all cell orders (desk scale only)."""
    tokens = [str(c) for c in cells(m)]
    arrangements = math.factorial(len(tokens))
    for c in Counter(tokens).values():
        arrangements //= math.factorial(c)
    if arrangements > limit:
        raise TopocodeError("too-large", f"{arrangements} token arrangements")
    return len({"".join(p) for p in _multiset_permutations(tokens)})


# ---------------------------------------------------------------- reconstruction

@dataclass
class RebuiltMatrix:
    matrix: TopcodeMatrix
    k0: int
    d0: int
    witnesses: list  # (beta, gamma) per cell, row-major
    graphs: list = field(default_factory=list)  # (Graph, TotalColoring) pairs

    def sort_key(self):
        return (self.d0, self.k0, self.matrix.X, self.matrix.E, self.matrix.Y)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(), "k": self.k0, "d": self.d0,
                "witnesses": [list(w) for w in self.witnesses],
                "graphs": [{"graph": g.to_json(), "coloring": f.to_json()} for g, f in self.graphs]}


@dataclass
class RebuildResult:
    solutions: list
    exhausted: bool = False
    steps: int = 0

    def to_json(self) -> dict:
        return {"exhausted": self.exhausted, "steps": self.steps,
                "solutions": [s.to_json() for s in self.solutions]}


def _needs_edge_progression(spec: FamilySpec) -> int | None:
    """Step (in d) of the arithmetic edge set the family forces, or None."""
    fam = spec.family
    if fam == "edge-antimagic":
        return None
    odd = fam in ("odd-graceful", "odd-elegant") or fam.startswith("odd-edge-")
    return 2 if odd else 1


def _progression_ok(E, step) -> bool:
    if len(set(E)) != len(E):
        return False
    s = sorted(E)
    if len(s) < 2:
        return True
    gap = s[1] - s[0]
    if gap <= 0 or gap % step:
        return False
    return all(b - a == gap for a, b in zip(s, s[1:]))


def _segmentations(s: str, n: int, q: int, step, counter, budget):
    """Cut s into n canonical decimal pieces; E-row pieces must form a progression when step is set."""
    L = len(s)
    cur = []

    def rec(pos):
        if counter[0] > budget:
            return
        if len(cur) == n:
            if pos == L:
                yield list(cur)
            return
        left = n - len(cur)
        if L - pos < left:
            return
        hi = L - pos - (left - 1)
        if s[pos] == "0":
            hi = 1
        for ln in range(1, hi + 1):
            counter[0] += 1
            if counter[0] > budget:
                return
            cur.append(int(s[pos:pos + ln]))
            if len(cur) == 2 * q and step is not None and not _progression_ok(cur[q:2 * q], step):
                cur.pop()
                continue
            yield from rec(pos + ln)
            cur.pop()

    yield from rec(0)


def _matching_check(mat: TopcodeMatrix, spec: FamilySpec, k0: int, d0: int) -> bool:
    q = mat.q
    edges = [(2 * i, 2 * i + 1) for i in range(q)]
    g = Graph.make(2 * q, edges, set(range(0, 2 * q, 2)), set(range(1, 2 * q, 2)))
    vc, ec = {}, {}
    for i, (x, e, y) in enumerate(mat.columns()):
        vc[2 * i], vc[2 * i + 1] = x, y
        ec[(2 * i, 2 * i + 1)] = e
    f = TotalColoring(vc, ec, spec.family, frozenset(range(0, 2 * q, 2)))
    return verify(g, f, spec, k0, d0).passed


def rebuild_from_string(s: str, q: int, family="graceful", budget: int = 1_000_000,
                kmax: int = 1000, dmax: int = 1000, realize: bool = True) -> RebuildResult:
    """All row-major 3 x q integer matrices spelling s that a (k0, d0) coloring of the family can produce.

    Each solution regenerates s exactly. Pairs (k0, d0) are searched with
    0 <= k0 <= kmax and 1 <= d0 <= dmax; ties are all reported. When the
    budget runs out the result is partial and `exhausted` is set.
    """
    if not s.isdigit():
        raise TopocodeError("parse-error", "string must be decimal digits")
    if not 1 <= q <= 4:
        raise TopocodeError("too-large", "q must be between 1 and 4")
    spec = as_spec(family)
    if spec.family in UNSUPPORTED:
        raise TopocodeError("unknown-family", f"{spec.family} has no X/E/Y row split")
    step = _needs_edge_progression(spec)
    counter = [0]
    found = []
    realized = {}
    for seg in _segmentations(s, 3 * q, q, step, counter, budget):
        X, E, Y = seg[:q], seg[q:2 * q], seg[2 * q:]
        mat = TopcodeMatrix.from_rows(X, E, Y)
        ky = E + Y
        g = reduce(math.gcd, X + [v - ky[0] for v in ky], 0)
        dvals = range(1, dmax + 1) if g == 0 else [v for v in range(1, min(g, dmax) + 1) if g % v == 0]
        lo = min(ky)
        for d0 in dvals:
            for k0 in range(lo % d0, min(lo, kmax) + 1, d0):
                counter[0] += 1
                if counter[0] > budget:
                    break
                if not _matching_check(mat, spec, k0, d0):
                    continue
                wit = [(0, x // d0) for x in X] + [(1, (v - k0) // d0) for v in E + Y]
                sol = RebuiltMatrix(mat, k0, d0, wit)
                if string_from_matrix(mat) != s:
                    raise TopocodeError("degenerate", "internal regeneration mismatch")
                found.append(sol)
            if counter[0] > budget:
                break
        if counter[0] > budget:
            break
    if realize:
        for sol in found:
            key = sol.matrix
            if key not in realized:
                realized[key] = graphs_from_matrix(key.canonical(), max_p=2 * q).graphs
            sol.graphs = realized[key]
    found.sort(key=RebuiltMatrix.sort_key)
    return RebuildResult(found, counter[0] > budget, counter[0])


# ---------------------------------------------------------------- string groups

def group_index(i: int, j: int, r: int, M: int, mode: str = "add") -> int:
    """i+j-r (add) or i-j+r (sub) modulo M, represented in [1, M]."""
    if mode == "add":
        v = (i + j - r) % M
    elif mode == "sub":
        v = (i - j + r) % M
    else:
        raise TopocodeError("bad-mode", mode)
    return v if v else M


def combine_strings(a: str, b: str, zero: str, M: int, mode: str = "add") -> str:
    """Digitwise (a+b-zero) or (a-b+zero) modulo M."""
    if not (len(a) == len(b) == len(zero)):
        raise TopocodeError("length-mismatch", "strings differ in length")
    if not 1 <= M <= 10:
        raise TopocodeError("bad-parameters", "digitwise modulus must be in 1..10")
    if mode not in ("add", "sub"):
        raise TopocodeError("bad-mode", mode)
    sign = 1 if mode == "add" else -1
    return "".join(str((int(x) + sign * (int(y) - int(z))) % M) for x, y, z in zip(a, b, zero))


def string_group_op(S, i: int, j: int, r: int, M: int, mode: str = "add") -> str:
    """Combine members i and j of an indexed string family with zero r.

    `S` is a list (1-based indices) or a dict keyed by index.
    """
    def member(n):
        try:
            return S[n] if isinstance(S, dict) else S[n - 1]
        except (KeyError, IndexError):
            raise TopocodeError("index-out-of-range", str(n)) from None

    return combine_strings(member(i), member(j), member(r), M, mode)
