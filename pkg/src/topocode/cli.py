"""Command line front end; every command prints one JSON document on stdout."""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import constructors, keystrings, set_colorings
from . import topcode_matrix as tm
from .coloring_engine import FAMILIES, FamilySpec, derive_equivalent, transform, verify
from .errors import TopocodeError
from .graph_core import Graph, count_partitions, leaf_count_identity, peel_leaves, random_tree
from .groups_homo import (MatrixGroup, build_every_zero_family, group_add, group_sub,
                          homomorphism_failures)
from .linform import LinForm
from .total_coloring import TotalColoring


def _kd(text: str):
    if text == "sym":
        return "sym"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'sym', got {text!r}") from None


def _count(text: str) -> int:
    """Integer that may be written as 1e6."""
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a count, got {text!r}") from None
    if v != int(v) or v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return int(v)


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _graph(path) -> Graph:
    return Graph.from_json(_load(path))


def _coloring(path) -> TotalColoring:
    data = _load(path)
    if isinstance(data, dict) and "coloring" in data and "vertices" not in data:
        data = data["coloring"]  # output of `gen`
    return TotalColoring.from_json(data)


def _enc(c):
    return c.to_json() if isinstance(c, LinForm) else c


def _order(text: str):
    if text == "rowmajor":
        return "rowmajor"
    if text.startswith("perm:"):
        return [int(x) for x in text[5:].split(",") if x]
    if text.startswith("index:"):
        return int(text[6:])
    raise TopocodeError("parse-error", f"order {text!r}")


def _tree_arg(args) -> Graph:
    path = args.tree or getattr(args, "graph", None)
    if path:
        return _graph(path)
    if getattr(args, "p", None):
        return random_tree(args.p, random.Random(args.seed))
    raise TopocodeError("bad-parameters", "give --tree FILE or --p N")


# ---------------------------------------------------------------- commands

def cmd_gen(args):
    t = _tree_arg(args)
    f = constructors.tree_kd_coloring(t, args.family, args.k, args.d, args.choices)
    return {"graph": t.to_json(), "coloring": f.to_json(),
            "matrix": tm.from_colored_graph(t, f).to_text()}, 0


def cmd_verify(args):
    g = _graph(args.graph)
    f = _coloring(args.coloring)
    spec = FamilySpec(args.family or f.family, set_ordered=args.set_ordered,
                      strictness=args.strictness)
    rep = verify(g, f, spec, args.k, args.d)
    return rep.to_json(), 0 if rep.passed else 1


def cmd_transform(args):
    g = _graph(args.graph)
    f = _coloring(args.coloring)
    if args.derive:
        out = derive_equivalent(f, g, args.derive)
    else:
        moves = [m for m in (args.moves or "").split(",") if m]
        out = transform(f, g, moves)
    return out.to_json(), 0


def _matrix(path) -> tm.TopcodeMatrix:
    return tm.TopcodeMatrix.from_json(_load(path))


def cmd_matrix(args):
    a = _matrix(args.a) if args.a else None
    if args.op == "from-graph":
        m = tm.from_colored_graph(_graph(args.graph), _coloring(args.coloring))
        return {"matrix": m.to_json(), "text": m.to_text()}, 0
    if a is None:
        raise TopocodeError("bad-parameters", "--a is required")
    b = _matrix(args.b) if args.b else None
    if args.op in ("union-sum", "subtract", "intersect", "union", "similar") and b is None:
        raise TopocodeError("bad-parameters", "--b is required")
    if args.op == "similar":
        return {"similar": tm.is_similar(a, b)}, 0
    if args.op == "canonical":
        m = a.canonical()
    elif args.op == "evaluate":
        if args.k == "sym" or args.d == "sym":
            raise TopocodeError("bad-parameters", "evaluate needs integer --k and --d")
        m = tm.evaluate(a, args.k, args.d)
    elif args.op == "parameterize":
        m = tm.parameterize(a)
    else:
        m = {"union-sum": tm.union_sum, "subtract": tm.subtract,
             "intersect": tm.intersect, "union": tm.union}[args.op](a, b)
    return {"matrix": m.to_json(), "text": m.to_text()}, 0


def cmd_string(args):
    m = _matrix(args.matrix)
    return {"string": keystrings.string_from_matrix(m, _order(args.order))}, 0


def cmd_rebuild(args):
    res = keystrings.rebuild_from_string(args.string, args.q, args.family, args.budget,
                                 realize=not args.no_graphs)
    return res.to_json(), 0


def cmd_group(args):
    if args.build:
        G = build_every_zero_family(_matrix(args.build), args.M, args.f)
        return G.to_json(), 0
    G = MatrixGroup.from_json(_load(args.family))
    op = group_add if args.op == "add" else group_sub
    lam = op(G, args.i, args.j, args.zero)
    return {"index": lam, "matrix": G.member(lam).to_json()}, 0


def cmd_homo(args):
    T = _graph(getattr(args, "from"))
    G = _graph(args.to)
    phi = _load(args.map)
    if isinstance(phi, dict):
        phi = {int(k): v for k, v in phi.items()}
    fails = homomorphism_failures(T, G, phi)
    return {"homomorphism": not fails, "failures": fails}, 0 if not fails else 1


def cmd_setcolor(args):
    g = _graph(args.graph or args.tree)
    if args.variant == "graph":
        r = set_colorings.graph_kd_total_set_coloring(g, args.seed)
        checks = r.check(g)
        return {"coloring": r.coloring.to_json(), "checks": checks}, 0 if all(checks.values()) else 1
    labels = _load(args.labels) if args.labels else None
    if isinstance(labels, dict):
        labels = {int(k): v for k, v in labels.items()}
    if labels is None:
        found = constructors.find_set_ordered_graceful(g, args.budget, args.seed)
        if found.status != "found":
            raise TopocodeError("no-labeling", f"set-ordered graceful search: {found.status}")
        labels = found.labeling.coloring
    if args.variant == "leaf-pairs":
        sc = set_colorings.peel_set_coloring(g, labels)
    else:
        sc = set_colorings.labeled_tree_set_coloring(g, labels, args.variant, args.w)
    if args.lift:
        sc = set_colorings.lift_kd(sc, args.k, args.d)
    out = {"coloring": sc.to_json()}
    code = 0
    if args.check:
        rep = set_colorings.verify_set_coloring(g, sc, args.check.split(","))
        out["report"] = rep.to_json()
        code = 0 if rep.passed else 1
    if args.hypergraph:
        out["hypergraph"] = set_colorings.extract_hypergraph(sc, args.hypergraph).to_json()
    return out, code


def cmd_peel(args):
    t = _tree_arg(args)
    trace = peel_leaves(t)
    return {"levels": [{"vertices": sorted(s.vertices), "removed": sorted(s.removed)}
                       for s in trace.steps]}, 0


def cmd_partition(args):
    out = {}
    if args.m is not None:
        out["count"] = count_partitions(args.m, args.k)
    if args.tree or args.p:
        n1, rhs = leaf_count_identity(_tree_arg(args))
        out["leaves"] = n1
        out["degree_formula"] = rhs
    return out, 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topocode")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, kd=True, seed=True):
        if kd:
            p.add_argument("--k", type=_kd, default="sym")
            p.add_argument("--d", type=_kd, default="sym")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        return p

    p = common(sub.add_parser("gen", help="color a tree for a family"))
    p.add_argument("--tree")
    p.add_argument("--p", type=int, help="random tree size when no file is given")
    p.add_argument("--family", default="graceful", choices=constructors.TREE_FAMILIES)
    p.add_argument("--choices")
    p.set_defaults(run=cmd_gen)

    p = common(sub.add_parser("verify", help="check a coloring"), seed=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--set-ordered", action="store_true")
    p.add_argument("--strictness", default="coloring", choices=("coloring", "labeling"))
    p.set_defaults(run=cmd_verify)

    p = common(sub.add_parser("transform", help="rewrite moves or family rewrite"), kd=False, seed=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--moves", help="comma separated move numbers 1..11")
    p.add_argument("--derive", help="target family")
    p.set_defaults(run=cmd_transform)

    p = common(sub.add_parser("matrix", help="matrix algebra"), seed=False)
    p.add_argument("--op", required=True, choices=("union-sum", "subtract", "intersect", "union",
                                                   "canonical", "evaluate", "parameterize",
                                                   "similar", "from-graph"))
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--graph")
    p.add_argument("--coloring")
    p.set_defaults(run=cmd_matrix)

    p = common(sub.add_parser("string", help="key string from a matrix"), kd=False, seed=False)
    p.add_argument("--matrix", required=True)
    p.add_argument("--order", default="rowmajor", help="rowmajor, perm:<csv> or index:<n>")
    p.set_defaults(run=cmd_string)

    p = common(sub.add_parser("rebuild", aliases=["pnbsp"], help="rebuild matrices from a string"), kd=False, seed=False)
    p.add_argument("--string", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--family", default="graceful", choices=FAMILIES)
    p.add_argument("--budget", type=_count, default=1_000_000)
    p.add_argument("--no-graphs", action="store_true")
    p.set_defaults(run=cmd_rebuild)

    p = common(sub.add_parser("group", help="every-zero matrix groups"), kd=False, seed=False)
    p.add_argument("--family", help="group JSON")
    p.add_argument("--op", default="add", choices=("add", "sub"))
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--zero", type=int)
    p.add_argument("--build", help="base matrix JSON; prints the generated group")
    p.add_argument("--M", type=int)
    p.add_argument("--f", default="sum", choices=("sum", "abs-difference", "sum-mod"))
    p.set_defaults(run=cmd_group)

    p = common(sub.add_parser("homo", help="check a graph homomorphism"), kd=False, seed=False)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(run=cmd_homo)

    p = common(sub.add_parser("setcolor", help="set-colorings and hypergraphs"))
    p.add_argument("--tree")
    p.add_argument("--graph")
    p.add_argument("--labels", help="vertex labels JSON (list or object)")
    p.add_argument("--variant", default="leaf-pairs",
                   choices=("leaf-pairs",) + set_colorings.TREE_SET_VARIANTS + ("graph",))
    p.add_argument("--w", default="abs-difference", choices=tuple(set_colorings.W_OPERATORS))
    p.add_argument("--lift", action="store_true")
    p.add_argument("--check", help="comma separated constraint names")
    p.add_argument("--hypergraph", choices=("vertices", "edges", "total"))
    p.add_argument("--budget", type=_count, default=2_000_000)
    p.set_defaults(run=cmd_setcolor)

    p = common(sub.add_parser("peel", help="leaf peeling levels of a tree"), kd=False)
    p.add_argument("--tree")
    p.add_argument("--p", type=int)
    p.set_defaults(run=cmd_peel)

    p = common(sub.add_parser("partition", help="partition counts and leaf identity"), kd=False)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--tree")
    p.add_argument("--p", type=int)
    p.set_defaults(run=cmd_partition)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, code = args.run(args)
    except TopocodeError as e:
        print(json.dumps({"error": e.code, "message": str(e)}, sort_keys=True), file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as e:
        print(json.dumps({"error": "input", "message": str(e)}, sort_keys=True), file=sys.stderr)
        return 1
    print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
