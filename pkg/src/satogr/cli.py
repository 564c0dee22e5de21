"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 unreadable input, 3 rank-deficient
basis, 4 any other domain error (wrong level, not in chart, ...).
"""

from __future__ import annotations

import argparse
import io
import json
import random
import sys
from typing import Callable

from . import duality, operators, plucker, points, projgeo, restriction
from .errors import RankDeficientError, SatoGrError
from .field import QQ, field_from_name
from .maya import IndexSet
from .serialize import (
    FormatError,
    dumps,
    family_to_json,
    operator_from_json,
    point_from_json,
    point_to_json,
    point_to_text,
    vector_from_json,
    vector_to_json,
    vector_to_text,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_RANK = 3
EXIT_DOMAIN = 4

# Without --stream, generation is refused above this level.
MAX_IN_MEMORY_LEVEL = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", EXIT_PARSE) from None


def _load_point(path: str):
    return point_from_json(_read_json(path))


def _load_vector(path: str):
    return vector_from_json(_read_json(path))


def _field(args):
    try:
        return field_from_name(args.field)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _check_level(args, level: int) -> None:
    if args.level is not None and args.level != level:
        raise CliError(f"--level {args.level} disagrees with the input level {level}", EXIT_DOMAIN)


def _emit_point(args, out, p, **extra) -> None:
    if args.format == "json":
        out.write(dumps(point_to_json(p, **extra)) + "\n")
    else:
        out.write(point_to_text(p) + "\n")
        for k, v in extra.items():
            out.write(f"{k}: {v}\n")


def _emit_vector(args, out, v) -> None:
    if args.format == "json":
        out.write(dumps(vector_to_json(v)) + "\n")
    else:
        out.write(vector_to_text(v) + "\n")


def _bool(x: bool) -> str:
    return "true" if x else "false"


# -- commands -------------------------------------------------------------------

def cmd_gen_relations(args, out) -> int:
    i = args.level if args.level is not None else 2
    if i < 1:
        raise CliError("--level must be at least 1", EXIT_DOMAIN)
    if args.count_only:
        if i > MAX_IN_MEMORY_LEVEL:
            raise CliError(f"counting at level {i} is not supported; use --stream to write the set", EXIT_DOMAIN)
        rels = plucker.generate_all(i)
        report = {"level": i, "relations": len(rels), "span_dimension": plucker.span_dimension(i)}
        if args.samples:
            rng = random.Random(args.seed)
            pts = [points.random_point(QQ, i, rng) for _ in range(args.samples)]
            report["seed"] = args.seed
            report["samples"] = args.samples
            report["monomials"] = len(plucker.monomials(i))
            report["evaluation_rank"] = plucker.evaluation_rank(pts)
        if args.format == "json":
            out.write(dumps(report) + "\n")
        else:
            for k, v in report.items():
                out.write(f"{k.replace('_', ' ')}: {v}\n")
        return EXIT_OK
    if args.stream:
        if args.format == "json":
            plucker.stream_relations(i, out)
        else:
            buf = _TextRelations(out, i)
            plucker.stream_relations(i, buf)
        return EXIT_OK
    if i > MAX_IN_MEMORY_LEVEL:
        raise CliError(
            f"level {i} has too many generators to hold in memory; rerun with --stream",
            EXIT_DOMAIN,
        )
    for r in plucker.generate_all(i):
        if args.format == "json":
            out.write(json.dumps(r.to_json(), separators=(",", ":")) + "\n")
        else:
            out.write(r.to_text() + "\n")
    return EXIT_OK


class _TextRelations:
    """File-like adapter turning NDJSON relation lines into the text form."""

    def __init__(self, out, level: int):
        self.out = out
        self.level = level

    def write(self, line: str) -> None:
        r = plucker.QuadraticRelation.from_json(self.level, json.loads(line))
        self.out.write(r.to_text() + "\n")


def _point_report(p) -> tuple[dict, bool]:
    rep: dict = {"level": p.level, "field": str(p.field), "dim": p.dim, "rank_ok": True,
                 "index": points.index_of(p)}
    ok = True
    if p.dim == p.level:
        v = points.plucker_vector(p)
        sat = plucker.satisfies_all(v)
        ok = sat
        rep["coords"] = vector_to_json(v)["coords"]
        rep["nonzero"] = len(v)
        rep["relations"] = _bool(sat)
        rep["charts"] = [str(t) for t in points.charts_of(p)]
    rep["verdict"] = "PASS" if ok else "FAIL"
    return rep, ok


def _write_report(args, out, rep: dict) -> None:
    if args.format == "json":
        out.write(dumps(rep) + "\n")
        return
    for k, v in rep.items():
        if k == "coords":
            for t, x in v.items():
                out.write(f"  X{t} = {x}\n")
        elif isinstance(v, list):
            out.write(f"{k}: {' '.join(v) if v else '-'}\n")
        else:
            out.write(f"{k}: {v}\n")


def cmd_check_point(args, out) -> int:
    if args.random:
        rng = random.Random(args.seed)
        f = _field(args)
        level = args.level if args.level is not None else 2
        all_ok = True
        if args.format == "text":
            out.write(f"# seed {args.seed}\n")
        for n in range(args.random):
            p = points.random_point(f, level, rng)
            rep, ok = _point_report(p)
            rep = {"sample": n, **rep}
            if args.format == "json":
                rep["seed"] = args.seed
            _write_report(args, out, rep)
            all_ok &= ok
        return EXIT_OK if all_ok else EXIT_FAIL
    if not args.input:
        raise CliError("check-point needs a point file or --random N", EXIT_PARSE)
    p = _load_point(args.input)
    _check_level(args, p.level)
    rep, ok = _point_report(p)
    _write_report(args, out, rep)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_vector(args, out) -> int:
    v = _load_vector(args.input)
    _check_level(args, v.level)
    failing = plucker.failing_relations(v)
    rep = {
        "level": v.level,
        "field": str(v.field),
        "nonzero": len(v),
        "relations": len(plucker.generate_all(v.level)),
        "violated": len(failing),
        "verdict": "FAIL" if failing else "PASS",
    }
    if failing:
        rep["first_violated"] = failing[0].to_text()
    _write_report(args, out, rep)
    return EXIT_FAIL if failing else EXIT_OK


def cmd_reconstruct(args, out) -> int:
    v = _load_vector(args.input)
    _check_level(args, v.level)
    if args.chart:
        try:
            t = IndexSet.parse(args.chart, v.level)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PARSE) from None
    else:
        t = v.support()[0]
    p = plucker.chart_reconstruct(v, t)
    _emit_point(args, out, p)
    return EXIT_OK


def cmd_perp(args, out) -> int:
    p = _load_point(args.input)
    _check_level(args, p.level)
    _emit_point(args, out, duality.perp(p))
    return EXIT_OK


def _operator(args, p):
    name = args.op
    if name in ("mul-z", "mul-zinv"):
        return operators.MulOperator.monomial(p.field, 1 if name == "mul-z" else -1)
    return operator_from_json(_read_json(name), p.field)


def cmd_act(args, out) -> int:
    p = _load_point(args.input)
    _check_level(args, p.level)
    g = _operator(args, p)
    q = operators.act(g, p)
    _emit_point(args, out, q, index=points.index_of(q))
    return EXIT_OK


def cmd_collinear(args, out) -> int:
    pts = [_load_point(path) for path in args.inputs]
    if len(pts) != 3:
        raise CliError("collinear takes exactly three point files", EXIT_PARSE)
    geo = projgeo.collinear_geometric(*pts)
    plu = projgeo.collinear_plucker(*pts)
    if args.format == "json":
        out.write(dumps({"geometric": geo, "plucker": plu}) + "\n")
    else:
        out.write(f"geometric: {_bool(geo)}, plucker: {_bool(plu)}\n")
    if not args.no_check and geo != plu:
        sys.stderr.write("error: the two predicates disagree\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_restrict(args, out) -> int:
    data = _read_json(args.input)
    j = args.to_level
    if isinstance(data, dict) and "coords" in data:
        v = vector_from_json(data)
        res = restriction.pushforward_coords(v, j) if j >= v.level else restriction.pullback_coords(v, j)
        if res is None:
            out.write("absent\n" if args.format == "text" else "null\n")
            return EXIT_FAIL
        _emit_vector(args, out, res)
        return EXIT_OK
    p = point_from_json(data)
    res = p.at_level(j) if j >= p.level else points.lower_level(p, j)
    if res is None:
        out.write("absent\n" if args.format == "text" else "null\n")
        return EXIT_FAIL
    _emit_point(args, out, res)
    return EXIT_OK


def _parse_param(text: str, field):
    parts = text.split(":")
    if len(parts) != 2:
        raise CliError(f"parameters look like 'lam:mu', got {text!r}", EXIT_PARSE)
    try:
        return [field.parse(x) for x in parts]
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _emit_family(args, out, fam, pts) -> None:
    if args.format == "json":
        out.write(dumps(family_to_json(fam, pts)) + "\n")
        return
    out.write(f"k: {fam.k}\nbottom:\n{point_to_text(fam.bottom)}\ntop:\n{point_to_text(fam.top)}\n")
    if pts is not None:
        out.write(f"points: {len(pts)}\n")
        for p in pts:
            out.write(point_to_text(p) + "\n")


def cmd_pencil(args, out) -> int:
    pts = [_load_point(path) for path in args.inputs]
    if len(pts) != 2:
        raise CliError("pencil takes exactly two point files", EXIT_PARSE)
    fam = projgeo.pencil(*pts)
    f = fam.top.field
    if args.param:
        members = projgeo.pencil_points(fam, [_parse_param(t, f) for t in args.param])
    elif f.characteristic:
        members = projgeo.pencil_points(fam)
    else:
        members = None
    _emit_family(args, out, fam, members)
    return EXIT_OK


def cmd_reference_space(args, out) -> int:
    pts = [_load_point(path) for path in args.inputs]
    status = projgeo.reference_status(pts)
    if status is not projgeo.ReferenceStatus.OK:
        if args.format == "json":
            out.write(dumps({"status": status.value}) + "\n")
        else:
            out.write(f"status: {status.value}\n")
        return EXIT_FAIL
    fam = projgeo.reference_space(pts)
    _emit_family(args, out, fam, None)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, default=None, help="window level i")
    common.add_argument("--field", default="Q", help="Q or GF(p) (default Q)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled output (default 0)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", default="-", help="output path, '-' for stdout")
    common.add_argument("--stream", action="store_true", help="stream relations through disk")
    common.add_argument("--count-only", action="store_true", help="print counts instead of relations")

    parser = argparse.ArgumentParser(prog="satogr", description="Window Grassmannian toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen-relations", cmd_gen_relations, "emit the quadratic relations of a level")
    sp.add_argument("--samples", type=int, default=0,
                    help="with --count-only: evaluation-rank check on N random points")
    sp = add("check-point", cmd_check_point, "validate a point and its coordinates")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--random", type=int, default=0, help="check N seeded random points instead")
    sp = add("check-vector", cmd_check_vector, "test a coordinate vector against the relations")
    sp.add_argument("input")
    sp = add("reconstruct", cmd_reconstruct, "rebuild a point from its coordinates")
    sp.add_argument("input")
    sp.add_argument("--chart", help="chart label such as [-2,-1] (default: first nonzero)")
    sp = add("perp", cmd_perp, "perpendicular subspace under the residue pairing")
    sp.add_argument("input")
    sp = add("act", cmd_act, "apply an operator to a point")
    sp.add_argument("input")
    sp.add_argument("--op", required=True, help="mul-z, mul-zinv or an operator JSON file")
    sp = add("collinear", cmd_collinear, "compare both collinearity predicates")
    sp.add_argument("inputs", nargs=3)
    sp.add_argument("--no-check", action="store_true", help="do not fail when they disagree")
    sp = add("restrict", cmd_restrict, "move a point or vector to another level")
    sp.add_argument("input")
    sp.add_argument("--to-level", type=int, required=True)
    sp = add("pencil", cmd_pencil, "the line through two adjacent points")
    sp.add_argument("inputs", nargs=2)
    sp.add_argument("--param", action="append", help="member [lam:mu], repeatable")
    sp = add("reference-space", cmd_reference_space, "projective space spanned by a reference")
    sp.add_argument("inputs", nargs="+")
    return parser


def _error_code(exc: Exception) -> int:
    if isinstance(exc, FormatError):
        return EXIT_PARSE
    if isinstance(exc, RankDeficientError):
        return EXIT_RANK
    return EXIT_DOMAIN


def _run(args, out) -> int:
    try:
        return args.func(args, out)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except SatoGrError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _error_code(exc)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.stream:
        # Streamed output goes straight to its destination.
        if args.output == "-":
            return _run(args, sys.stdout)
        with open(args.output, "w", encoding="utf-8") as fh:
            return _run(args, fh)
    buf = io.StringIO()
    code = _run(args, buf)
    text = buf.getvalue()
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
