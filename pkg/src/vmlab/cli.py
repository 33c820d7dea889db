"""Command-line front end.

Exit codes: 0 success, 1 refuted or counterexample found, 2 usage,
precondition or capacity error.  Every flag also reads a default from the
environment variable ``VMLAB_<FLAG>`` (e.g. ``VMLAB_SEED``, ``VMLAB_CAP_N``);
an explicit flag wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import families as fam
from .core import Graph, complete_graph, cycle_graph, empty_graph, load_labels, path_graph
from .errors import InvariantError, VmlabError
from .flips import Flip, apply_flip
from .logic import (Signature, as_model, evaluate, independence_witness, ladder, load_formulas,
                    parse_definitions, parse_formula)
from .search import DEFAULT_CAP_DEPTH, DEFAULT_CAP_N, is_depth_r_vminor
from .structures import BinaryStructure
from .suites import SUITES, run_suite
from .vminor import VMinorWitness, apply_witness, local_complement, local_complement_set, pivot

FORMATS = ("text", "dot", "json-witness")


def _env(name: str, default, cast=str):
    raw = os.environ.get("VMLAB_" + name.upper().replace("-", "_"))
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"vmlab: bad value {raw!r} in VMLAB_{name.upper()}")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _read_graph(path: str) -> Graph:
    text = Path(path).read_text()
    side = Path(path + ".labels.json")
    labels = load_labels(side.read_text()) if side.exists() else None
    return Graph.from_text(text, labels)


def _read_structure(path: str):
    text = Path(path).read_text()
    if text.lstrip().startswith("domain"):
        return BinaryStructure.from_text(text)
    return _read_graph(path)


def _emit_graph(g: Graph, args) -> None:
    body = g.to_dot() if args.format == "dot" else g.to_text()
    if args.out:
        Path(args.out).write_text(body)
        if g.labels:
            Path(args.out + ".labels.json").write_text(g.labels_json())
    else:
        sys.stdout.write(body)


# ---------------------------------------------------------------- gen

def _gen_family(family: str, params: list[str], flip_tau: str | None) -> Graph:
    def need(count):
        if len(params) != count:
            raise argparse.ArgumentTypeError(f"{family} takes {count} parameter(s)")
        return [int(p) for p in params]

    if family == "half-graph":
        return fam.half_graph(*need(1))
    if family == "comparability-grid":
        return fam.comparability_grid(*need(1))
    if family.endswith("-crossing"):
        kind = family[:-len("-crossing")]
        tau = None
        if flip_tau:
            tau = [[int(c) for c in row.split()] for row in Path(flip_tau).read_text().splitlines()
                   if row.strip()]
        r, n = need(2)
        return fam.crossing(kind, r, n, tau)
    if family == "permutation":
        return fam.permutation_graph(_ints(" ".join(params)))
    if family == "power-split-interval":
        return fam.power_split_interval(*need(1)).graph
    if family == "half-graph-split-interval":
        model, _ = fam.half_graph_split_interval(*need(1))
        return model.graph()
    if family == "ordered-matching":
        return fam.ordered_matching_graph([tuple(_ints(p)) for p in params])
    simple = {"path": path_graph, "cycle": cycle_graph,
              "complete": lambda n: complete_graph(range(n)), "empty": lambda n: empty_graph(range(n))}
    if family in simple:
        return simple[family](*need(1))
    raise argparse.ArgumentTypeError(f"unknown family {family!r}")


GEN_FAMILIES = ("half-graph", "comparability-grid", "star-crossing", "clique-crossing",
                "half-crossing", "permutation", "power-split-interval",
                "half-graph-split-interval", "ordered-matching", "path", "cycle", "complete", "empty")


def cmd_gen(args) -> int:
    _emit_graph(_gen_family(args.family, args.params, args.flip_tau), args)
    return 0


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "k", "r", "intervals")}
    rep = run_suite(args.suite, args.seed, args.trials, **params)
    data = rep.to_dict()
    data["command"] = ["vmlab"] + list(args.argv)
    if args.report:
        Path(args.report).write_text(json.dumps(data, indent=1, default=str))
    if args.format == "json-witness":
        print(json.dumps(data, indent=1, default=str))
    else:
        print(rep.summary())
    return 0 if rep.ok else 1


# ---------------------------------------------------------------- op

def cmd_op(args) -> int:
    g = _read_graph(args.graph)
    a = args.args
    if args.op == "lc":
        out = local_complement(g, int(a[0]))
    elif args.op == "pivot":
        out = pivot(g, int(a[0]), int(a[1]))
    elif args.op == "lcset":
        out = local_complement_set(g, _ints(" ".join(a)))
    elif args.op == "flip":
        out = apply_flip(g, Flip.from_text(Path(a[0]).read_text()))
    else:
        out = apply_witness(g, VMinorWitness.from_json(Path(a[0]).read_text()))
    _emit_graph(out, args)
    return 0


# ---------------------------------------------------------------- contains

def cmd_contains(args) -> int:
    g, h = _read_graph(args.g), _read_graph(args.h)
    res = is_depth_r_vminor(g, h, args.depth, args.cap_n, args.cap_depth)
    data = res.to_json()
    if args.out and res.found:
        Path(args.out).write_text(res.witness.to_json())
    if args.format == "json-witness":
        print(json.dumps(data, indent=1))
    else:
        s = data["stats"]
        if res.found:
            print(f"found at depth {res.witness.depth}: steps {data['witness']['steps']} "
                  f"deletions {data['witness']['deletions']}")
        else:
            print(f"not found up to depth {args.depth}")
        print(f"nodes {s['nodes']} dedup {s['dedup_hits']} embedding tests {s['embedding_tests']}")
    return 0 if res.found else 1


# ---------------------------------------------------------------- eval

def _parse_marks(items) -> dict[str, list[int]]:
    out = {}
    for item in items or ():
        name, _, vals = item.partition("=")
        out[name] = _ints(vals)
    return out


def cmd_eval(args) -> int:
    s = _read_structure(args.structure)
    preds = _parse_marks(args.predicate)
    if isinstance(s, BinaryStructure):
        rels = {r.name for r in s.relations}
        names = set(s.predicates) | set(preds)
    else:
        rels, names = {"E"}, set(preds)
    sig = Signature(rels, names)
    defs = {}
    if args.library:
        defs.update(load_formulas(args.library, sorted(names)))
        sig.definitions.update(defs)
    if args.defs:
        defs.update(parse_definitions(Path(args.defs).read_text(), sig))
    phi = parse_formula(args.formula, sig)
    s = as_model(s, preds)
    x, y = args.vars
    if args.ladder is not None:
        lad = ladder(s, phi, args.ladder, defs, x, y, args.disjoint)
        print(f"ladder length {len(lad)}: {lad}")
        return 0
    if args.independence is not None:
        w = independence_witness(s, phi, args.independence, defs, x, y, args.disjoint)
        if w is None:
            print("no witness")
            return 1
        a, b = w
        print(f"a = {list(a)}")
        for j in sorted(b, key=lambda j: (len(j), sorted(j))):
            print(f"b{sorted(j)} = {b[j]}")
        return 0
    assignment = {}
    for item in args.assign or ():
        name, _, val = item.partition("=")
        assignment[name] = int(val)
    print("true" if evaluate(s, phi, assignment, defs) else "false")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vmlab", description="Vertex-minor and flip experiments.")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = _env("format", "text")

    g = sub.add_parser("gen", help="generate a graph family")
    g.add_argument("family", choices=GEN_FAMILIES)
    g.add_argument("params", nargs="*")
    g.add_argument("--flip-tau", help="file with an (r+2)x(r+2) 0/1 matrix for flipped crossings")
    g.add_argument("--out", help="graph file; labels go to OUT.labels.json")
    g.add_argument("--format", choices=("text", "dot"), default=fmt if fmt != "json-witness" else "text")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=_env("seed", 0, int))
    v.add_argument("--trials", type=int, default=_env("trials", None, int))
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--intervals", type=int, default=None)
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--format", choices=FORMATS, default=fmt)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("op", help="apply an operation to a graph file")
    o.add_argument("op", choices=("lc", "pivot", "lcset", "flip", "witness"))
    o.add_argument("graph")
    o.add_argument("args", nargs="*")
    o.add_argument("--out")
    o.add_argument("--format", choices=("text", "dot"), default=fmt if fmt != "json-witness" else "text")
    o.set_defaults(func=cmd_op)

    c = sub.add_parser("contains", help="is H a depth-r vertex minor of G?")
    c.add_argument("g")
    c.add_argument("h")
    c.add_argument("--depth", type=int, default=1)
    c.add_argument("--cap-n", type=int, default=_env("cap_n", DEFAULT_CAP_N, int))
    c.add_argument("--cap-depth", type=int, default=_env("cap_depth", DEFAULT_CAP_DEPTH, int))
    c.add_argument("--out", help="write the witness JSON here")
    c.add_argument("--format", choices=FORMATS, default=fmt)
    c.set_defaults(func=cmd_contains)

    e = sub.add_parser("eval", help="evaluate a first-order formula")
    e.add_argument("structure", help="graph file or binary structure file")
    e.add_argument("formula")
    e.add_argument("--library", choices=("split_interval", "permutation"))
    e.add_argument("--defs", help="file of 'name(vars) := body' definitions")
    e.add_argument("--assign", action="append", metavar="VAR=ID")
    e.add_argument("--predicate", action="append", metavar="NAME=IDS")
    e.add_argument("--vars", nargs=2, default=("x", "y"), metavar=("X", "Y"))
    e.add_argument("--ladder", type=int, metavar="CAP")
    e.add_argument("--independence", type=int, metavar="N")
    e.add_argument("--disjoint", action="store_true")
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"vmlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (VmlabError, argparse.ArgumentTypeError, OSError, ValueError, KeyError) as exc:
        print(f"vmlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
