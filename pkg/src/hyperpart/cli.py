"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad parameters, 3 a size
cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import admissibility, cwmodel
from .equipart import EquipartingMatrix, ParamTriple, count_classes, enumerate_classes, validate
from .errors import DegeneracyError, InvariantError, ParameterError, ResourceError
from .graycode import column_str, enumerate_gray_codes, gray_classes
from .moment import (
    ArrangementSpec,
    arrangement_to_matrix,
    layout_points,
    matrix_to_arrangement,
    verify_equipartition,
)

EXIT_OK, EXIT_FAILED, EXIT_PARAM, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def _emit(out, fmt: str, records: list[dict], text_lines: list[str] | None = None):
    if fmt == "json":
        out.write(json.dumps(records if len(records) != 1 else records[0], indent=None) + "\n")
    elif fmt == "csv":
        if records:
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
            w.writeheader()
            for r in records:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                            for k, v in r.items()})
            out.write(buf.getvalue())
    else:
        for line in text_lines if text_lines is not None else [str(r) for r in records]:
            out.write(line + "\n")


def _params(j: int, k: int, d: int | None, ell: int | None) -> ParamTriple:
    if d is None:
        d, ell0 = admissibility.ramos_bound(j, k)
        ell = ell0 if ell is None else ell
    elif ell is None:
        ell = d * k - (2**k - 1) * j
    return ParamTriple(j, k, d, ell)


def _read_matrix(path: str) -> EquipartingMatrix:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from None
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return EquipartingMatrix.from_json(stripped.splitlines()[0])
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path} is not valid JSON: {exc}") from None
    return EquipartingMatrix.from_text(text)


def cmd_gray(a, out):
    codes = enumerate_gray_codes(a.k, a.start or "")
    recs = [{"index": i, "start": column_str(c.start), "flips": c.flip_string(),
             "columns": " ".join(column_str(col) for col in c.columns)}
            for i, c in enumerate(codes)]
    _emit(out, a.format, recs, [f"{len(codes)} codes"] + [r["columns"] for r in recs])
    return EXIT_OK


def cmd_classes(a, out):
    classes = gray_classes(a.k, a.start or "")
    recs = [{"index": i, "size": c.size, "transitions": list(c.transition_multiset),
             "representative": " ".join(column_str(col) for col in c.representative.columns)}
            for i, c in enumerate(classes)]
    lines = [f"{len(classes)} classes"] + [
        f"size={r['size']} transitions={','.join(map(str, r['transitions']))} {r['representative']}"
        for r in recs
    ]
    _emit(out, a.format, recs, lines)
    return EXIT_OK


def cmd_count(a, out):
    p = _params(a.j, a.k, a.d, a.ell)
    n = count_classes(p)
    rec = {**p.as_dict(), "count": str(n)}
    _emit(out, a.format, [rec], [f"d={p.d} ell={p.ell} count={n}"])
    return EXIT_OK


def cmd_enumerate(a, out):
    p = _params(a.j, a.k, a.d, a.ell)
    mats = enumerate_classes(p, threads=a.threads)
    target = open(a.out, "w") if a.out else out
    try:
        for m in mats:
            target.write(m.to_json() + "\n")
    finally:
        if a.out:
            target.close()
    if a.out:
        out.write(f"{len(mats)} classes written to {a.out}\n")
    return EXIT_OK


def _verify(m: EquipartingMatrix, arrangement_path: str | None):
    diag = validate(m)
    if not diag:
        return False, {"ok": False, "stage": "matrix", "detail": f"{diag.clause}: {diag.detail}"}
    layout = layout_points(m.params)
    if arrangement_path:
        try:
            with open(arrangement_path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParameterError(f"cannot read {arrangement_path}: {exc}") from None
        arr = ArrangementSpec.from_json(text)
    else:
        arr = matrix_to_arrangement(m, layout)
    check = verify_equipartition(arr, layout, m)
    return check.ok, {"ok": check.ok, "stage": "geometry", "detail": check.witness,
                      "arrangement": json.loads(arr.to_json())}


def cmd_verify(a, out):
    m = _read_matrix(a.matrix)
    ok, rec = _verify(m, a.arrangement)
    _emit(out, a.format, [rec], ["ok" if ok else f"FAILED ({rec['stage']}): {rec['detail']}"])
    return EXIT_OK if ok else EXIT_FAILED


def cmd_roundtrip(a, out):
    m = _read_matrix(a.matrix)
    ok, rec = _verify(m, None)
    if ok:
        back = arrangement_to_matrix(ArrangementSpec.from_json(rec["arrangement"]),
                                     layout_points(m.params))
        ok = back.rows == m.rows
        rec = {**rec, "ok": ok, "stage": "roundtrip",
               "detail": "" if ok else "recovered matrix differs from the input"}
    _emit(out, a.format, [rec], ["ok" if ok else f"FAILED ({rec['stage']}): {rec['detail']}"])
    return EXIT_OK if ok else EXIT_FAILED


def cmd_cells(a, out):
    by_dim = cwmodel.enumerate_cells(a.d, a.k)
    recs = [{"dim": dim, "cell": str(c)} for dim, cs in sorted(by_dim.items()) for c in cs]
    _emit(out, a.format, recs, [f"{r['dim']} {r['cell']}" for r in recs])
    return EXIT_OK


def cmd_stats(a, out):
    s = cwmodel.stats(a.d, a.k)
    rec = s.as_dict()
    if a.format == "text":
        lines = [f"d={s.d} k={s.k} top_dim={s.top_dim} euler={s.euler}"]
        for dim in sorted(s.cells_by_dim):
            lines.append(f"dim {dim}: cells={s.cells_by_dim[dim]} orbits={s.orbits_by_dim[dim]} "
                         f"nonfree={s.nonfree_cells_by_dim[dim]}")
        _emit(out, a.format, [rec], lines)
    elif a.format == "csv":
        recs = [{"dim": dim, "cells": s.cells_by_dim[dim], "orbits": s.orbits_by_dim[dim],
                 "nonfree": s.nonfree_cells_by_dim[dim]} for dim in sorted(s.cells_by_dim)]
        _emit(out, a.format, recs)
    else:
        _emit(out, a.format, [rec])
    return EXIT_OK


def cmd_facets(a, out):
    c = cwmodel.canonicalize(cwmodel.CellSymbol.parse(a.cell))
    fs = cwmodel.facets(c)
    recs = [{"dim": f.dim, "cell": str(f)} for f in fs]
    _emit(out, a.format, recs, [f"{len(fs)} facets of {c} (dim {c.dim})"] + [r["cell"] for r in recs])
    return EXIT_OK


def cmd_delta(a, out):
    r = admissibility.decide(a.j, a.k)
    lo, hi = r.bounds
    line = f"j={r.j} k={r.k} status={r.status} bounds=[{lo},{hi if hi is not None else ''}]"
    _emit(out, a.format, [r.as_dict()], [line] + [f"  {e}" for e in r.evidence])
    return EXIT_OK


def cmd_table1(a, out):
    rows = admissibility.table1(strict=False)
    recs = [{"j": r.j, "k": r.k, "ell": r.ell, "d": r.d, "expected": r.expected,
             "computed": r.computed, "ok": r.ok} for r in rows]
    lines = [f"{'PASS' if r.ok else 'FAIL'} j={r.j} k={r.k} ell={r.ell} d={r.d} "
             f"count={r.computed}" for r in rows]
    if a.format == "json":
        _emit(out, a.format, [{"rows": recs}])
    else:
        _emit(out, a.format, recs, lines)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperpart", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("gray", cmd_gray, "list Gray codes from a start column")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--start", default="", help="start column, first row first, e.g. 010")
    p = add("classes", cmd_classes, "Gray codes up to row permutation")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--start", default="")
    for name, func, help_ in (("count", cmd_count, "count classes of equiparting matrices"),
                              ("enumerate", cmd_enumerate, "list class representatives as JSON lines")):
        p = add(name, func, help_)
        p.add_argument("-j", type=int, required=True)
        p.add_argument("-k", type=int, required=True)
        p.add_argument("-d", type=int, default=None, help="defaults to the lower bound")
        p.add_argument("--ell", type=int, default=None)
        if name == "enumerate":
            p.add_argument("--out", default=None)
    for name, func, help_ in (("verify", cmd_verify, "realize a matrix by hyperplanes and check it"),
                              ("roundtrip", cmd_roundtrip, "matrix -> arrangement -> matrix")):
        p = add(name, func, help_)
        p.add_argument("--matrix", required=True, help="text (k rows of bits) or JSON file")
        if name == "verify":
            p.add_argument("--arrangement", default=None, help="check this arrangement instead")
    for name, func, help_ in (("cells", cmd_cells, "list cells of the cell model"),
                              ("stats", cmd_stats, "cell counts, orbits, Euler characteristic")):
        p = add(name, func, help_)
        p.add_argument("-d", type=int, required=True)
        p.add_argument("-k", type=int, required=True)
    p = add("facets", cmd_facets, "facets of a cell")
    p.add_argument("--cell", required=True, help="e.g. 'sigma=12;I=1,1;S=+,+;d=0;k=2'")
    p = add("delta", cmd_delta, "bounds for Delta(j, k)")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    add("table1", cmd_table1, "recompute the table of class counts")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        sys.stderr.write("error: --threads must be positive\n")
        return EXIT_PARAM
    try:
        return args.func(args, out)
    except ParameterError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARAM
    except ResourceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RESOURCE
    except (DegeneracyError, InvariantError) as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
