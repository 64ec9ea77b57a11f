"""Command line interface.

Exit status: 0 on success, 2 when a check returns a negative or inconclusive
verdict, 1 on input or runtime errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import catalog
from .coxeter import WeylGroup
from .datum import RootDatum, datum_from_json, make_kac_datum
from .errors import NotSymmetrizable, WeylHullError
from .gcm import classify, symmetrizer, validate_gcm
from .horosphere import horosphere_witness
from .hull import (In, Out, enumerate_faces, essential_vertices, hull_context,
                   hull_membership, slice_report)
from .kostant import attain, type_rank, verify_linear, verify_nonlinear
from .render import Hull2D, Slice2D, render
from .serialize import csv_rows, dumps
from .tits import DEFAULT_BUDGET, InCone, reduce_to_chamber

SCHEMAS = {
    "gcm": '{"cartan": [[2, -1], [-1, 2]]}',
    "datum": '{"cartan": [[2]], "d": 2, "c": [[2, 0]], "h": [[1, 0]]}  '
             '(omit "d", "c", "h" for the minimal Kac datum)',
    "point": 'comma separated rationals, e.g. "1,1/2,-3"',
}

DEFAULT_H = {2: "1,-1", 3: "1,0,-1", 4: "3,1,-1,-3"}


class UsageError(Exception):
    def __init__(self, message, schema=None):
        super().__init__(message)
        self.schema = schema


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parse_vector(text: str, what: str = "point") -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v.strip()) for v in text.split(",") if v.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {what} {text!r}: {exc}", "point") from exc


def _parse_floats(text: str, what: str) -> np.ndarray:
    return np.array([float(v) for v in _parse_vector(text, what)])


def _load_json(path: str, schema: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}", schema) from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}", schema) from exc
    if not isinstance(obj, dict) or "cartan" not in obj:
        raise UsageError(f"{path} lacks a \"cartan\" entry", schema)
    return obj


def _gcm(args):
    if getattr(args, "type", None):
        return validate_gcm(catalog.cartan(args.type))
    if not getattr(args, "gcm", None):
        raise UsageError("one of --gcm FILE or --type NAME is required", "gcm")
    return validate_gcm(_load_json(args.gcm, "gcm")["cartan"])


def _datum(args) -> RootDatum:
    if getattr(args, "datum", None):
        obj = _load_json(args.datum, "datum")
        try:
            return datum_from_json(obj)
        except KeyError as exc:
            raise UsageError(f"datum file lacks {exc}", "datum") from exc
    return make_kac_datum(_gcm(args))


def _default_h(datum: RootDatum):
    return datum.rho


def _context(args):
    datum = _datum(args)
    h = _parse_vector(args.h, "h") if args.h else _default_h(datum)
    return hull_context(datum, h, args.budget)


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- handlers -------------------------------------------------------------------

def cmd_classify(args) -> int:
    gcm = _gcm(args)
    types = classify(gcm)
    report = {
        "components": [list(t.component) for t in types],
        "tags": [t.tag for t in types],
        "witnesses": [list(t.witness) for t in types],
    }
    try:
        sym = symmetrizer(gcm)
        report["symmetrizer"] = {"d": list(sym.d), "b": [list(r) for r in sym.b]}
    except NotSymmetrizable as exc:
        report["symmetrizer"] = None
        report["notSymmetrizable"] = {"cycle": list(exc.cycle)}
    _emit(args, dumps(report))
    return 0


def cmd_datum_make(args) -> int:
    _emit(args, dumps(make_kac_datum(_gcm(args)).to_json()))
    return 0


def cmd_datum_validate(args) -> int:
    datum = _datum(args)
    _emit(args, dumps({"valid": True, "datum": datum.to_json(),
                       "extension": [list(r) for r in datum.extension]}))
    return 0


def cmd_weyl(args) -> int:
    group = WeylGroup(_datum(args), cap=args.cap)
    rows = []
    for w in group.enumerate_by_length(args.length):
        length, left, right = group.descents_and_length(w)
        rows.append({"word": w, "length": length, "leftDescents": left, "rightDescents": right,
                     "actB": [list(r) for r in w.act_b]})
    _emit(args, dumps({"maxLength": args.length, "count": len(rows), "elements": rows}))
    return 0


def cmd_cone(args) -> int:
    datum = _datum(args)
    group = WeylGroup(datum)
    res = reduce_to_chamber(group, datum.point(_parse_vector(args.point)), args.budget, args.pivot)
    if isinstance(res, InCone):
        _emit(args, dumps({"verdict": "InCone", "w": res.w, "dominant": res.dominant,
                           "cell": res.cell}))
        return 0
    _emit(args, dumps({"verdict": "Inconclusive", "budget": res.budget,
                       "lastPoint": res.last_point}))
    return 2


def _verdict_json(v) -> dict:
    if isinstance(v, In):
        return {"verdict": "In", "tight": v.tight, "w": v.w, "dominant": v.dominant}
    if isinstance(v, Out):
        return {"verdict": "Out", "kind": v.kind, "index": v.index, "value": v.value,
                "bound": v.bound, "w": v.w}
    return {"verdict": "Inconclusive", "budget": v.budget, "lastPoint": v.last_point}


def cmd_hull_member(args) -> int:
    ctx = _context(args)
    v = hull_membership(ctx, _parse_vector(args.point))
    _emit(args, dumps({"h": ctx.h, **_verdict_json(v)}))
    return 0 if isinstance(v, In) else 2


def cmd_hull_faces(args) -> int:
    ctx = _context(args)
    faces, truncated = enumerate_faces(ctx, args.length)
    rows = [{"rep": f.coset.rep, "J": f.coset.j_set, "dimension": f.dimension} for f in faces]
    _emit(args, dumps({"h": ctx.h, "maxLength": args.length, "count": len(rows),
                       "truncated": truncated, "faces": rows}))
    return 0


def _vertex_json(v) -> dict:
    out = {"kind": v.kind, "w": v.w, "point": v.point}
    if v.kind == "edge":
        out.update(k=v.k, s=v.s)
    return out


def cmd_hull_slice(args) -> int:
    ctx = _context(args)
    rep = slice_report(ctx, args.i, Fraction(args.t), args.length)
    iv = rep.interval
    _emit(args, dumps({
        "i": rep.i, "t": rep.t,
        "interval": {"lower": iv.lower, "upper": iv.upper},
        "vertices": [_vertex_json(v) for v in rep.vertices],
        "essential": [_vertex_json(v) for v in rep.essential],
        "m": rep.m, "truncated": rep.truncated,
    }))
    return 0


def cmd_hull_essential(args) -> int:
    ctx = _context(args)
    verts = essential_vertices(ctx, args.i, Fraction(args.t))
    _emit(args, dumps({"i": args.i, "t": Fraction(args.t), "m": len(verts),
                       "essential": [_vertex_json(v) for v in verts]}))
    return 0


def cmd_hull_render(args) -> int:
    ctx = _context(args)
    if args.i is None:
        mode = Hull2D(args.length)
    else:
        if args.t is None:
            raise UsageError("--t is required together with --i")
        mode = Slice2D(args.i, Fraction(args.t), args.length)
    _emit(args, render(ctx, mode))
    return 0


def _type_and_h(args):
    n = type_rank(args.type)
    h = _parse_floats(args.h or DEFAULT_H.get(n, ""), "h")
    if len(h) != n:
        raise UsageError(f"--h needs {n} entries for type {args.type}", "point")
    return n, h


def cmd_verify(args, linear: bool) -> int:
    n, h = _type_and_h(args)
    if linear:
        rep = verify_linear(n, h, args.samples, args.seed, args.coverage_tol,
                            pinch_targets=args.pinch_targets)
    else:
        rep = verify_nonlinear(n, h, args.samples, args.seed, args.coverage_tol)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_rows([f"log_a{j}" for j in range(n)], rep.projections))
    _emit(args, dumps(rep.to_json()))
    return 0 if rep.ok else 2


def cmd_attain(args) -> int:
    n, h = _type_and_h(args)
    target = _parse_floats(args.target, "target")
    res = attain(n, h, target, args.tol)
    _emit(args, dumps({"k": res.k, "achieved": res.achieved, "error": res.error,
                       "fallback": res.fallback, "route": res.route}))
    return 0


def cmd_witness(args) -> int:
    w = horosphere_witness(_datum(args))
    v = w.verdict
    _emit(args, dumps({
        "case": w.case, "h": w.h, "coefficients": w.coefficients,
        "fired": {"kind": v.kind, "index": v.index, "value": v.value, "bound": v.bound},
        "negativeOmegas": w.negative_omegas, "description": w.describe(),
    }))
    return 0


# --- parser -------------------------------------------------------------------

def _source(p, datum=True):
    p.add_argument("--gcm", help="JSON file with a Cartan matrix")
    p.add_argument("--type", help="catalog name: " + ", ".join(catalog.CATALOG))
    if datum:
        p.add_argument("--datum", help="JSON root datum file")


def _out(p):
    p.add_argument("--out", "--svg", dest="out", help="write output here instead of stdout")


def _hull_args(p):
    _source(p)
    p.add_argument("--h", help="regular dominant point (defaults to the datum's rho)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _out(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weylhull", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify a generalized Cartan matrix")
    _source(p, datum=False)
    _out(p)
    p.set_defaults(func=cmd_classify)

    dp = sub.add_parser("datum", help="root data").add_subparsers(dest="action", required=True,
                                                                  parser_class=_Parser)
    p = dp.add_parser("make-kac", help="minimal free and cofree datum")
    _source(p, datum=False)
    _out(p)
    p.set_defaults(func=cmd_datum_make)
    p = dp.add_parser("validate", help="check a datum file")
    _source(p)
    _out(p)
    p.set_defaults(func=cmd_datum_validate)

    wp = sub.add_parser("weyl", help="Weyl group").add_subparsers(dest="action", required=True,
                                                                  parser_class=_Parser)
    p = wp.add_parser("enumerate", help="elements by length")
    _source(p)
    p.add_argument("--length", "--max-length", dest="length", type=int, required=True)
    p.add_argument("--cap", type=int, default=10**6)
    _out(p)
    p.set_defaults(func=cmd_weyl)

    cp = sub.add_parser("cone", help="Tits cone").add_subparsers(dest="action", required=True,
                                                                 parser_class=_Parser)
    p = cp.add_parser("reduce", help="reflect a point into the fundamental chamber")
    _source(p)
    p.add_argument("--point", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--pivot", choices=["smallest", "largest"], default="smallest")
    _out(p)
    p.set_defaults(func=cmd_cone)

    hp = sub.add_parser("hull", help="orbit hulls").add_subparsers(dest="action", required=True,
                                                                   parser_class=_Parser)
    p = hp.add_parser("member", help="exact membership test")
    _hull_args(p)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_hull_member)
    p = hp.add_parser("faces", help="coset faces up to a length")
    _hull_args(p)
    p.add_argument("--length", "--max-length", dest="length", type=int, required=True)
    p.set_defaults(func=cmd_hull_faces)
    p = hp.add_parser("slice", help="slice vertices at a level")
    _hull_args(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--length", "--max-length", dest="length", type=int, required=True)
    p.set_defaults(func=cmd_hull_slice)
    p = hp.add_parser("essential", help="essential vertices of a slice")
    _hull_args(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_hull_essential)
    p = hp.add_parser("render", help="SVG picture (rank 2 hull or rank 3 slice)")
    _hull_args(p)
    p.add_argument("--length", "--max-length", dest="length", type=int, default=6)
    p.add_argument("--i", type=int)
    p.add_argument("--t")
    p.set_defaults(func=cmd_hull_render)

    vp = sub.add_parser("verify", help="numerical convexity checks").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, linear in (("kostant", False), ("linear", True)):
        p = vp.add_parser(name)
        p.add_argument("--type", required=True, help="A1, A2 or A3")
        p.add_argument("--h", help="decreasing trace-zero diagonal")
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--coverage-tol", type=float)
        p.add_argument("--pinch-targets", type=int, default=0)
        p.add_argument("--csv", help="dump sampled projections as CSV")
        if not linear:
            p.add_argument("--linear", action="store_true", help="use the linear projection")
        _out(p)
        p.set_defaults(func=lambda a, lin=linear: cmd_verify(a, lin or a.linear))

    p = sub.add_parser("attain", help="construct k reaching a target")
    p.add_argument("--type", required=True, help="A1 or A2")
    p.add_argument("--h")
    p.add_argument("--target", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    _out(p)
    p.set_defaults(func=cmd_attain)

    p = sub.add_parser("witness", help="regular point whose hull misses the origin")
    _source(p)
    _out(p)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.schema:
            print(f"expected {exc.schema}: {SCHEMAS[exc.schema]}", file=sys.stderr)
        return 1
    except (WeylHullError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
