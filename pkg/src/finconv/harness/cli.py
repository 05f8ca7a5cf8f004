"""Command line surface.

Exit status: 0 when everything checked holds, 1 when a property is violated
(or a predicate is false), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .. import components as pc
from .. import exponentials as ex
from .. import groups as gr
from .. import interval_formulas as iv
from .. import pasting as pa
from .. import spaces as sp
from . import instances as ins
from .docformat import Document, DocumentError, document_of_space, load, parse, serialize
from .mining import MiningTask, UnknownProperty, mine, property_names, replay

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> Document:
    try:
        if path == "-":
            return parse(sys.stdin.read())
        return load(path)
    except OSError as exc:
        raise InputError(str(exc)) from None


def _pick(doc: Document, kind: str, name: str | None):
    if name is None:
        names = [n for k, n in doc.order if k == kind]
        if not names:
            raise InputError(f"the document declares no {kind}")
        name = names[0]
    return getattr(doc, kind)(name), name


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _print_json(obj, out: str | None = None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


# subcommands

def cmd_space(args) -> int:
    if args.enumerate is not None:
        kind = "topological" if args.topological else "all"
        try:
            spaces = list(ins.enumerate_spaces(args.enumerate, kind, args.up_to_iso))
        except ins.BoundExceeded as exc:
            raise InputError(str(exc)) from None
        doc = Document()
        for k, s in enumerate(spaces):
            doc.add_space(f"S{k}", s)
        _emit(serialize(doc) if not args.count_only else f"{len(spaces)}\n", args.out)
        return OK
    if args.random:
        rng = np.random.default_rng(args.seed)
        s = ins.random_space(rng, args.max_points or 4, topological=args.topological)
        _emit(serialize(document_of_space("X", s)), args.out)
        return OK
    if args.file is None:
        raise InputError("give a document, --enumerate N or --random")
    s, name = _pick(_load(args.file), "space", args.name)
    _print_json({
        "name": name,
        "points": s.n,
        "edges": len(s.edges()),
        "topological": s.is_topological,
        "components": len(pc.path_components(s).classes),
        "open_sets": len(sp.open_sets(s)) if s.n <= sp.MAX_OPEN_ENUMERATION else None,
    }, args.out)
    return OK


def cmd_op(args) -> int:
    doc = _load(args.file)
    names = args.names or [n for k, n in doc.order if k == "space"][:2]
    spaces = [doc.space(n) for n in names]
    if not spaces:
        raise InputError("no spaces to operate on")
    op = args.operation
    if op == "product":
        res = sp.product(spaces)
    elif op == "coproduct":
        res = sp.coproduct(spaces)
    elif op == "exponential":
        if len(spaces) != 2:
            raise InputError("exponential takes a base and a target")
        res = ex.exponential(spaces[0], spaces[1]).structure
    elif op == "reflect":
        res = sp.reflect_top(spaces[0])
    elif op == "components":
        res = pc.path_components(spaces[0]).quotient
    elif op == "subspace":
        if args.points is None:
            raise InputError("subspace needs --points")
        want = set(args.points.split())
        res = sp.subspace(spaces[0], [p for p in spaces[0].points if str(p) in want])
    elif op == "quotient":
        f, _ = _pick(doc, "map", args.map)
        res = sp.quotient(f.dom, f, f.cod.points)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(op)
    _emit(serialize(document_of_space(args.result, res)), args.out)
    return OK


def _verdict(ok: bool, details: dict, out) -> int:
    _print_json({"holds": ok, **details}, out)
    return OK if ok else VIOLATION


def cmd_check(args) -> int:
    doc = _load(args.file)
    what = args.predicate
    if what == "continuity":
        f, name = _pick(doc, "map", args.name)
        bad = [str(x) for x in f.dom.points if not sp.is_continuous_at(f, x)]
        return _verdict(sp.is_continuous(f), {"map": name, "discontinuous_at": bad}, args.out)
    if what == "quotient-map":
        f, name = _pick(doc, "map", args.name)
        return _verdict(sp.is_quotient_map(f), {"map": name}, args.out)
    if what == "biquotient":
        f, name = _pick(doc, "map", args.name)
        return _verdict(pc.is_biquotient(f), {"map": name}, args.out)
    if what == "kent":
        f, name = _pick(doc, "map", args.name)
        v = pc.check_kent(f.dom, f)
        return _verdict(v.agree, {"map": name, **v.as_dict()}, args.out)
    if what == "pasting":
        c, name = _pick(doc, "cover", args.name)
        f, fname = _pick(doc, "map", args.map)
        if f.dom != c.space:
            raise InputError("the map must be defined on the covered space")
        v = pa.check_pasting(c, pa.pieces_of(c, f), f.cod)
        return _verdict(not v.violates_lemma, {"cover": name, "map": fname, **v.as_dict()}, args.out)
    if what == "exp-law":
        from .properties import exp_law_violation
        names = args.names or [n for k, n in doc.order if k == "space"][:3]
        if len(names) != 3:
            raise InputError("exp-law needs three spaces Z X Y")
        msg = exp_law_violation(*(doc.space(n) for n in names))
        return _verdict(msg is None, {"spaces": names, "violation": msg}, args.out)
    G, name = _pick(doc, "group", args.name)
    if what == "pstop-group":
        return _verdict(gr.is_pstop_group(G), {"group": name}, args.out)
    if what == "quasitop-group":
        return _verdict(gr.is_quasitop_group(G), {"group": name}, args.out)
    if what == "hgroup":
        if not gr.is_pstop_group(G):
            return _verdict(False, {"group": name, "reason": "not a pseudotopological group"}, args.out)
        report = gr.h_group_report(G)
        return _verdict(report.ok, {"group": name, **report.as_dict()}, args.out)
    raise InputError(what)  # pragma: no cover


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not an exact rational: {text!r}") from None


def cmd_formulas(args) -> int:
    if args.action == "eval":
        if args.schedule not in iv.SCHEDULES or args.s is None or args.t is None:
            raise InputError(f"usage: formulas eval {{{','.join(iv.SCHEDULES)}}} S T")
        try:
            val = iv.evaluate(iv.SCHEDULES[args.schedule], _fraction(args.s), _fraction(args.t))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _emit(f"{val}\n", args.out)
        return OK
    results = iv.check_boundaries()
    failed = [r for r in results if not r.passed]
    _print_json({"identities": len(results), "failed": [r.name for r in failed]}, args.out)
    return OK if not failed else VIOLATION


def cmd_mine(args) -> int:
    if args.list:
        from .properties import REGISTRY
        for name in property_names():
            print(f"{name}\t{REGISTRY[name].description}")
        return OK
    if args.replay:
        status = OK
        for path in args.replay:
            prop, msg = replay(path)
            print(f"{path}\t{prop}\t{'violated: ' + msg if msg else 'holds'}")
            status = max(status, VIOLATION if msg else OK)
        return status
    if not args.prop:
        raise InputError("name a property (see mine --list)")
    props = property_names() if args.prop == ["all"] else args.prop
    status = OK
    for name in props:
        try:
            task = MiningTask(name, source="exhaustive" if args.exhaustive else "sampled", seed=args.seed,
                              count=args.count, max_points=args.max_points, out_dir=args.out,
                              workers=args.workers)
        except UnknownProperty:
            raise InputError(f"unknown property {name!r}") from None
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report = mine(task)
        if args.out is None:
            sys.stdout.write(report.to_json())
        else:
            print(f"{name}: {report.instances} instances, {len(report.violations)} violations")
        status = max(status, report.exit_status)
    return status


def cmd_export_dot(args) -> int:
    s, name = _pick(_load(args.file), "space", args.name)
    _emit(sp.to_dot(s, name), args.out)
    return OK


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-points", type=int, default=None)
    common.add_argument("--count", type=int, default=1000)
    common.add_argument("--out", default=None, help="output file (directory for mine)")
    common.add_argument("--up-to-iso", action="store_true")

    p = argparse.ArgumentParser(prog="finconv", description="Finite pseudotopological spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("space", parents=[common], help="describe, enumerate or sample spaces")
    s.add_argument("file", nargs="?")
    s.add_argument("--name")
    s.add_argument("--enumerate", type=int, metavar="N")
    s.add_argument("--topological", action="store_true")
    s.add_argument("--random", action="store_true")
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_space)

    o = sub.add_parser("op", parents=[common], help="build a space from declared spaces")
    o.add_argument("operation", choices=["product", "coproduct", "subspace", "quotient",
                                         "exponential", "reflect", "components"])
    o.add_argument("file")
    o.add_argument("names", nargs="*")
    o.add_argument("--points", help="space-separated labels for subspace")
    o.add_argument("--map", help="map naming the quotient")
    o.add_argument("--result", default="R")
    o.set_defaults(func=cmd_op)

    c = sub.add_parser("check", parents=[common], help="evaluate a predicate on a document")
    c.add_argument("predicate", choices=["continuity", "pasting", "biquotient", "kent", "quotient-map",
                                         "exp-law", "hgroup", "pstop-group", "quasitop-group"])
    c.add_argument("file")
    c.add_argument("names", nargs="*")
    c.add_argument("--name")
    c.add_argument("--map")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("formulas", parents=[common], help="reparametrization schedules")
    f.add_argument("action", choices=["eval", "verify"])
    f.add_argument("schedule", nargs="?")
    f.add_argument("s", nargs="?")
    f.add_argument("t", nargs="?")
    f.set_defaults(func=cmd_formulas)

    m = sub.add_parser("mine", parents=[common], help="mine a registered property for violations")
    m.add_argument("prop", nargs="*")
    m.add_argument("--exhaustive", action="store_true")
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--list", action="store_true")
    m.add_argument("--replay", nargs="+", metavar="WITNESS")
    m.set_defaults(func=cmd_mine)

    d = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering of a space")
    d.add_argument("file")
    d.add_argument("--name")
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, DocumentError, sp.SpaceError, gr.GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
