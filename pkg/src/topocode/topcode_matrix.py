"""3 x q matrices (X, E, Y) of colors and their column-multiset algebra."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import product

from .errors import TopocodeError
from .graph_core import Graph, canonical_form
from .linform import LinForm, parse_form, value_at
from .total_coloring import TotalColoring, edge_key


def entry_key(c):
    if isinstance(c, LinForm):
        return (c.kcoef, c.dcoef)
    return (0, c)


def column_key(col):
    x, e, y = col
    return (entry_key(e), entry_key(x), entry_key(y))


@dataclass(frozen=True)
class TopcodeMatrix:
    X: tuple
    E: tuple
    Y: tuple

    def __post_init__(self):
        if not (len(self.X) == len(self.E) == len(self.Y)):
            raise TopocodeError("shape-error", "rows differ in length")

    @classmethod
    def from_rows(cls, X, E, Y) -> "TopcodeMatrix":
        return cls(tuple(X), tuple(E), tuple(Y))

    @classmethod
    def from_columns(cls, cols) -> "TopcodeMatrix":
        cols = list(cols)
        return cls(tuple(c[0] for c in cols), tuple(c[1] for c in cols), tuple(c[2] for c in cols))

    @property
    def q(self) -> int:
        return len(self.E)

    def columns(self) -> list[tuple]:
        return list(zip(self.X, self.E, self.Y))

    def rows(self) -> tuple[tuple, tuple, tuple]:
        return self.X, self.E, self.Y

    def canonical(self) -> "TopcodeMatrix":
        """Columns sorted by (E, X, Y)."""
        return TopcodeMatrix.from_columns(sorted(self.columns(), key=column_key))

    def column_multiset(self) -> Counter:
        return Counter(self.columns())

    def same_columns(self, other: "TopcodeMatrix") -> bool:
        return self.column_multiset() == other.column_multiset()

    def is_integer(self) -> bool:
        return all(isinstance(c, int) for row in self.rows() for c in row)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(c) for c in row) for row in self.rows()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TopcodeMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) != 3:
            raise TopocodeError("parse-error", "matrix text needs three lines")

        def cell(tok):
            return int(tok) if tok.lstrip("-").isdigit() else parse_form(tok)

        return cls.from_rows(*([cell(t) for t in ln.split()] for ln in lines))

    def to_json(self) -> dict:
        def enc(c):
            return c.to_json() if isinstance(c, LinForm) else c

        return {"X": [enc(c) for c in self.X], "E": [enc(c) for c in self.E],
                "Y": [enc(c) for c in self.Y]}

    @classmethod
    def from_json(cls, data) -> "TopcodeMatrix":
        if isinstance(data, str):
            data = json.loads(data)

        def dec(c):
            return LinForm.from_json(c) if isinstance(c, list) else int(c)

        return cls.from_rows(*([dec(c) for c in data[r]] for r in "XEY"))


def from_colored_graph(g: Graph, f: TotalColoring, sort: bool = True) -> TopcodeMatrix:
    """One column (x, uv, y) per edge, x taken from the X side.

    Without a bipartition the end with the smaller color (then smaller id) is x.
    """
    f.check_total(g)
    xy = f.orientation(g)
    cols = []
    for u, v in g.edges:
        if xy is not None:
            a, b = (u, v) if u in xy[0] else (v, u)
        else:
            a, b = sorted((u, v), key=lambda w: (entry_key(f.vertex_colors[w]), w))
        cols.append((f.vertex_colors[a], f.edge_colors[(u, v)], f.vertex_colors[b]))
    if sort:
        cols.sort(key=column_key)
    return TopcodeMatrix.from_columns(cols)


# ---------------------------------------------------------------- multiset algebra

def _from_counter(cnt: Counter) -> TopcodeMatrix:
    return TopcodeMatrix.from_columns(sorted(cnt.elements(), key=column_key))


def union_sum(a: TopcodeMatrix, b: TopcodeMatrix) -> TopcodeMatrix:
    """A concatenated with B, column order kept."""
    return TopcodeMatrix.from_columns(a.columns() + b.columns())


def subtract(a: TopcodeMatrix, b: TopcodeMatrix) -> TopcodeMatrix:
    """Remove one occurrence of each column of b from a; a's order is kept."""
    need = b.column_multiset()
    ca = a.column_multiset()
    if any(ca[c] < n for c, n in need.items()):
        raise TopocodeError("not-submatrix", "b is not a column sub-multiset of a")
    out = []
    for col in a.columns():
        if need[col] > 0:
            need[col] -= 1
        else:
            out.append(col)
    return TopcodeMatrix.from_columns(out)


def intersect(a: TopcodeMatrix, b: TopcodeMatrix) -> TopcodeMatrix:
    """Largest common column multiset, canonical order."""
    return _from_counter(a.column_multiset() & b.column_multiset())


def union(a: TopcodeMatrix, b: TopcodeMatrix) -> TopcodeMatrix:
    """(A - B) + (B - A) + (A & B) as multisets, canonical order."""
    ca, cb = a.column_multiset(), b.column_multiset()
    return _from_counter((ca - cb) + (cb - ca) + (ca & cb))


def coincide(a: TopcodeMatrix, b: TopcodeMatrix, h: TopcodeMatrix) -> TopcodeMatrix:
    """Merge a = T1+H and b = T2+H along their shared part H into T1+H+T2."""
    t1 = subtract(a, h)
    t2 = subtract(b, h)
    return union_sum(union_sum(t1, h), t2)


def split(c: TopcodeMatrix, h: TopcodeMatrix, first: TopcodeMatrix) -> tuple[TopcodeMatrix, TopcodeMatrix]:
    """Undo coincide: c = T1+H+T2 with T1 = `first` gives (T1+H, T2+H)."""
    rest = subtract(subtract(c, h), first)
    return union_sum(first, h), union_sum(rest, h)


# ---------------------------------------------------------------- exchanges

def _check_index(m: TopcodeMatrix, i: int):
    if not 0 <= i < m.q:
        raise TopocodeError("index-out-of-range", str(i))


def column_exchange(m: TopcodeMatrix, i: int, j: int) -> TopcodeMatrix:
    _check_index(m, i)
    _check_index(m, j)
    cols = m.columns()
    cols[i], cols[j] = cols[j], cols[i]
    return TopcodeMatrix.from_columns(cols)


def line_exchange(m: TopcodeMatrix, i: int) -> TopcodeMatrix:
    """Swap x_i and y_i."""
    _check_index(m, i)
    cols = m.columns()
    x, e, y = cols[i]
    cols[i] = (y, e, x)
    return TopcodeMatrix.from_columns(cols)


def _normal_column(col):
    x, e, y = col
    if entry_key(y) < entry_key(x):
        x, y = y, x
    return (x, e, y)


def similarity_form(m: TopcodeMatrix):
    """Invariant of exchanges: sorted multiset of columns with ends ordered."""
    return tuple(sorted((_normal_column(c) for c in m.columns()),
                        key=lambda c: (column_key(c), entry_key(c[0]))))


def is_similar(a: TopcodeMatrix, b: TopcodeMatrix) -> bool:
    """True when b arises from a by column and line exchanges."""
    if a.q != b.q:
        return False
    return similarity_form(a) == similarity_form(b)


def similarity_witness(a: TopcodeMatrix, b: TopcodeMatrix):
    """Exchange moves turning a into b: ('L', i) and ('C', i, j) in application order."""
    if not is_similar(a, b):
        return None
    cur = a.columns()
    target = b.columns()
    moves = []
    for pos, want in enumerate(target):
        j = next(j for j in range(pos, len(cur))
                 if cur[j] == want or (cur[j][2], cur[j][1], cur[j][0]) == want)
        if j != pos:
            cur[pos], cur[j] = cur[j], cur[pos]
            moves.append(("C", pos, j))
        if cur[pos] != want:
            x, e, y = cur[pos]
            cur[pos] = (y, e, x)
            moves.append(("L", pos))
    return moves


def apply_moves(m: TopcodeMatrix, moves) -> TopcodeMatrix:
    for mv in moves:
        m = column_exchange(m, mv[1], mv[2]) if mv[0] == "C" else line_exchange(m, mv[1])
    return m


# ---------------------------------------------------------------- parameters

def unit_matrix(q: int) -> TopcodeMatrix:
    """X row 0, E and Y rows 1."""
    return TopcodeMatrix((0,) * q, (1,) * q, (1,) * q)


def parameterize(t: TopcodeMatrix) -> TopcodeMatrix:
    """k*I0 + d*T: X entries become x*d, E and Y entries become k + entry*d."""
    if not t.is_integer():
        raise TopocodeError("not-integer", "parameterize needs an integer matrix")
    return TopcodeMatrix(tuple(LinForm(0, x) for x in t.X),
                         tuple(LinForm(1, e) for e in t.E),
                         tuple(LinForm(1, y) for y in t.Y))


def evaluate(m: TopcodeMatrix, k0: int, d0: int, allow_negative: bool = False) -> TopcodeMatrix:
    """Substitute k=k0, d=d0; a negative entry raises 'negative-entry' unless allowed."""
    out = TopcodeMatrix(*(tuple(value_at(c, k0, d0) for c in row) for row in m.rows()))
    if not allow_negative and any(c < 0 for row in out.rows() for c in row):
        raise TopocodeError("negative-entry", f"negative value at (k,d)=({k0},{d0})")
    return out


def linear_combine(coeffs, mats) -> TopcodeMatrix:
    """Entrywise sum of coeff_i * M_i."""
    coeffs, mats = list(coeffs), list(mats)
    if len(coeffs) != len(mats) or not mats:
        raise TopocodeError("length-mismatch", "one coefficient per matrix")
    if len({m.q for m in mats}) != 1:
        raise TopocodeError("length-mismatch", "matrices differ in q")
    if all(c == 0 for c in coeffs):
        raise TopocodeError("degenerate", "all coefficients are zero")
    rows = []
    for r in range(3):
        row = []
        for i in range(mats[0].q):
            acc = 0
            for c, m in zip(coeffs, mats):
                acc = m.rows()[r][i] * c + acc
            row.append(acc)
        rows.append(row)
    return TopcodeMatrix.from_rows(*rows)


# ---------------------------------------------------------------- realization

def _set_partitions(items):
    """All set partitions of a list, as lists of blocks (restricted growth order)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


@dataclass
class Realizations:
    graphs: list  # (Graph, TotalColoring) pairs, deterministic order
    partial: bool = False


def graphs_from_matrix(m: TopcodeMatrix, max_p: int = 10, budget: int = 200_000,
                       max_q: int = 10) -> Realizations:
    """Colored graphs (up to colored isomorphism) whose matrix has m's columns.

    X-row ends and Y-row ends stay on separate sides. Every way of merging
    equal-colored ends on one side is tried; merges that would create parallel
    edges or exceed max_p vertices are dropped.
    """
    if m.q > max_q:
        raise TopocodeError("too-large", f"q={m.q} exceeds {max_q}")
    cols = m.columns()
    classes = {}
    for i, (x, e, y) in enumerate(cols):
        classes.setdefault(("X", entry_key(x)), []).append(i)
        classes.setdefault(("Y", entry_key(y)), []).append(i)
    keys = sorted(classes)
    choices = [list(_set_partitions(classes[key])) for key in keys]
    seen = {}
    tried = 0
    partial = False
    for combo in product(*choices):
        tried += 1
        if tried > budget:
            partial = True
            break
        nblocks = sum(len(c) for c in combo)
        if nblocks > max_p:
            continue
        xv, yv = [0] * len(cols), [0] * len(cols)
        nxt = 0
        X, Y = set(), set()
        for key, blocks in zip(keys, combo):
            for block in blocks:
                for i in block:
                    (xv if key[0] == "X" else yv)[i] = nxt
                (X if key[0] == "X" else Y).add(nxt)
                nxt += 1
        pairs = [edge_key(xv[i], yv[i]) for i in range(len(cols))]
        if len(set(pairs)) != len(pairs):
            continue
        g = Graph.make(nxt, pairs, X, Y)
        vc = {}
        for i, (x, e, y) in enumerate(cols):
            vc[xv[i]] = x
            vc[yv[i]] = y
        ec = {pairs[i]: cols[i][1] for i in range(len(cols))}
        vlab = {v: ("X" if v in X else "Y", entry_key(vc[v])) for v in range(nxt)}
        elab = {e: entry_key(c) for e, c in ec.items()}
        key = canonical_form(g.without_bipartition(), vlab, elab)
        if key not in seen:
            seen[key] = (g, TotalColoring(vc, ec, x_side=frozenset(X)))
    out = sorted(seen.items(), key=lambda kv: (kv[1][0].p, repr(kv[0])))
    return Realizations([v for _, v in out], partial)
