from __future__ import annotations

from dataclasses import dataclass

from .errors import TopocodeError
from .linform import LinForm, value_at


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class TotalColoring:
    """Colors for every vertex and edge; values are LinForms or plain ints.

    `x_side` optionally pins which vertices play the X role (the side whose
    colors are pure multiples of d); otherwise the graph's bipartition is used.
    """

    vertex_colors: dict
    edge_colors: dict
    family: str | None = None
    x_side: frozenset | None = None
    constant: object = None

    def vertex(self, v):
        return self.vertex_colors[v]

    def edge(self, u, v):
        return self.edge_colors[edge_key(u, v)]

    def check_total(self, g) -> None:
        missing = [v for v in range(g.p) if v not in self.vertex_colors]
        missing += [e for e in g.edges if e not in self.edge_colors]
        if missing:
            raise TopocodeError("incomplete-coloring", f"uncolored: {missing[:5]}")

    def evaluate(self, k: int, d: int) -> "TotalColoring":
        return TotalColoring({v: value_at(c, k, d) for v, c in self.vertex_colors.items()},
                             {e: value_at(c, k, d) for e, c in self.edge_colors.items()},
                             self.family, self.x_side,
                             None if self.constant is None else value_at(self.constant, k, d))

    def key(self):
        """Hashable identity of the color assignment."""
        return (tuple(sorted(self.vertex_colors.items())), tuple(sorted(self.edge_colors.items())))

    def __eq__(self, other):
        return isinstance(other, TotalColoring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def orientation(self, g):
        """(X, Y) used for this coloring on g, or None when g is not bipartite."""
        if self.x_side is not None:
            X = frozenset(self.x_side)
            return X, frozenset(range(g.p)) - X
        return g.bipartition()

    def to_json(self) -> dict:
        def enc(c):
            return c.to_json() if isinstance(c, LinForm) else c

        out = {"vertices": {str(v): enc(c) for v, c in sorted(self.vertex_colors.items())},
               "edges": {f"{u}-{v}": enc(c) for (u, v), c in sorted(self.edge_colors.items())}}
        if self.family:
            out["family"] = self.family
        if self.x_side is not None:
            out["X"] = sorted(self.x_side)
        if self.constant is not None:
            out["constant"] = enc(self.constant)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "TotalColoring":
        def dec(c):
            return LinForm.from_json(c) if isinstance(c, list) else int(c)

        verts = {int(v): dec(c) for v, c in data["vertices"].items()}
        edges = {}
        for key, c in data["edges"].items():
            u, v = (int(x) for x in key.split("-"))
            edges[edge_key(u, v)] = dec(c)
        xs = data.get("X")
        const = data.get("constant")
        return cls(verts, edges, data.get("family"), None if xs is None else frozenset(xs),
                   None if const is None else dec(const))
