"""Command line front end.

Exit codes: 0 success / property holds, 1 property fails (reason on
stdout as JSON), 2 input error (message on stderr).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import io
from .ball_models import balls_intersect, intersection_graph, slack
from .errors import InvalidDrawing, InvalidInput, ModelMismatch, ScfeError
from .generators import (
    complete_signed_from_positive,
    interval_model,
    random_nsi_model,
    random_unit_model,
    tree_graph_model,
)
from .metric_tree import center, distance
from .model_transforms import nsi_to_unit, unit_to_proper, unkiss_model
from .pipeline import model_from_drawing, roundtrip_report, solve_complete
from .recognition import (
    BALANCED_MAX_ORDER,
    augmented_adjacency,
    is_balanced_bruteforce,
    is_strongly_chordal,
    nsi_necessary_filter,
)
from .render import FORMATS, render, write_report
from .signed_graphs import check_valid_drawing

log = logging.getLogger("scfe")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 2 on any usage problem
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    return io.loads(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_bytes(data: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


def _default_seed() -> int:
    raw = os.environ.get("SCFE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"SCFE_SEED is not an integer: {raw!r}") from None


# -- commands ---------------------------------------------------------------


def cmd_distance(a) -> int:
    t = io.tree_from_dict(_read(a.tree))
    d = distance(t, io.parse_location(a.a, t), io.parse_location(a.b, t))
    _emit(io.dumps({"distance": io.fmt(d)}), a.out)
    return 0


def cmd_center(a) -> int:
    t = io.tree_from_dict(_read(a.tree))
    locs = [io.parse_location(x, t) for x in (a.x, a.y, a.z)]
    _emit(io.dumps({"center": io.location_to_dict(center(t, *locs))}), a.out)
    return 0


def cmd_intersect(a) -> int:
    m = io.model_from_dict(_read(a.model))
    hit = balls_intersect(m, a.u, a.v)
    _emit(io.dumps({"intersect": hit, "slack": io.fmt(slack(m, a.u, a.v))}), a.out)
    return 0 if hit else 1


def cmd_graph(a) -> int:
    m = io.model_from_dict(_read(a.model))
    _emit(io.dumps(io.graph_to_dict(intersection_graph(m))), a.out)
    return 0


def _transform(fn, a) -> int:
    m = io.model_from_dict(_read(a.model))
    out, report = fn(m)
    _emit(io.dumps(io.model_to_dict(out)), a.out)
    if a.report:
        Path(a.report).write_text(io.dumps(io.report_to_dict(report)))
    return 0


def _to_proper(m):
    unit, first = nsi_to_unit(m)
    out, second = unit_to_proper(unit)
    return out, first + second


def cmd_check_drawing(a) -> int:
    s = io.signed_from_dict(_read(a.signed))
    d = io.drawing_from_dict(_read(a.drawing))
    ok, violations = check_valid_drawing(s, d)
    _emit(io.dumps({"valid": ok, "violations": [list(v) for v in violations]}), a.out)
    return 0 if ok else 1


def cmd_draw(a) -> int:
    s = io.signed_from_dict(_read(a.signed))
    m = io.model_from_dict(_read(a.model))
    try:
        d = solve_complete(s, m)
    except ModelMismatch as exc:
        _emit(io.dumps({"error": str(exc), "discrepancies": [list(x) for x in exc.discrepancies]}), None)
        return 1
    _emit(io.dumps(io.drawing_to_dict(d)), a.out)
    return 0


def cmd_model_from_drawing(a) -> int:
    s = io.signed_from_dict(_read(a.signed))
    d = io.drawing_from_dict(_read(a.drawing))
    try:
        m = model_from_drawing(s, d)
    except InvalidDrawing as exc:
        _emit(io.dumps({"error": str(exc), "violations": [list(v) for v in exc.violations]}), None)
        return 1
    _emit(io.dumps(io.model_to_dict(m)), a.out)
    return 0


def cmd_roundtrip(a) -> int:
    s = io.signed_from_dict(_read(a.signed))
    m = io.model_from_dict(_read(a.model))
    try:
        ok, reason = roundtrip_report(s, m)
    except ModelMismatch as exc:
        ok, reason = False, f"{exc}: {[list(x) for x in exc.discrepancies]}"
    _emit(io.dumps({"roundtrip": ok, "failure": reason}), a.out)
    return 0 if ok else 1


def cmd_recognize(a) -> int:
    g = io.graph_from_dict(_read(a.graph))
    order = a.balanced_max_order
    if order is not None and order > BALANCED_MAX_ORDER:
        raise InvalidInput(f"--balanced-max-order above {BALANCED_MAX_ORDER} is not supported")
    verdict = nsi_necessary_filter(g, order)
    strong = is_strongly_chordal(g) if not verdict.refuted else None
    balanced = is_balanced_bruteforce(augmented_adjacency(g), order) if order and not verdict.refuted else None
    _emit(io.dumps(io.filter_to_dict(verdict, strong, balanced)), a.out)
    return 1 if verdict.refuted else 0


def _parse_intervals(text: str):
    out = []
    for k, part in enumerate(p for p in text.split(";") if p.strip()):
        bits = [b.strip() for b in part.split(",")]
        if len(bits) not in (2, 3):
            raise InvalidInput(f"bad interval {part!r}; use lo,hi[,label]")
        out.append((bits[0], bits[1], bits[2] if len(bits) == 3 else f"v{k}"))
    return out


def cmd_gen(a) -> int:
    def seed() -> int:
        return a.seed if a.seed is not None else _default_seed()

    if a.kind == "interval":
        if not a.intervals:
            raise InvalidInput("gen interval needs --intervals 'lo,hi[,label];...'")
        doc = io.model_to_dict(interval_model(_parse_intervals(a.intervals)))
    elif a.kind == "tree":
        if not a.graph:
            raise InvalidInput("gen tree needs --graph")
        doc = io.model_to_dict(tree_graph_model(io.graph_from_dict(_read(a.graph))))
    elif a.kind == "random-unit":
        doc = io.model_to_dict(random_unit_model(a.n, seed()))
    elif a.kind == "random-nsi":
        doc = io.model_to_dict(random_nsi_model(a.n, seed()))
    else:
        if not a.graph:
            raise InvalidInput("gen complete-signed needs --graph")
        doc = io.signed_to_dict(complete_signed_from_positive(io.graph_from_dict(_read(a.graph))))
    _emit(io.dumps(doc), a.out)
    return 0


def _load_renderable(d):
    kind = io.document_kind(d)
    if kind == "model":
        return io.model_from_dict(d)
    if kind == "drawing":
        return io.drawing_from_dict(d)
    if kind == "tree":
        return io.tree_from_dict(d)
    raise InvalidInput(f"cannot render a {kind} document")


def cmd_render(a) -> int:
    doc = _load_renderable(_read(a.input))
    _emit_bytes(render(doc, a.format), a.out)
    return 0


def cmd_report(a) -> int:
    m = io.model_from_dict(_read(a.model))
    extra = {}
    if a.transforms:
        unit = nsi_to_unit(m)[0]
        extra = {"unit": unit, "proper": unit_to_proper(unit)[0]}
    for path in write_report(m, a.out_dir, a.format, extra):
        print(path)
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scfe", description="Ball models on real trees and signed-graph drawings.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, aliases=()):
        sp = sub.add_parser(name, help=help, aliases=list(aliases))
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="output file (default: stdout)")
        return sp

    sp = add("distance", cmd_distance, "distance between two points of a tree")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--a", required=True, help="node id, EDGE:OFFSET or location JSON")
    sp.add_argument("--b", required=True)

    sp = add("center", cmd_center, "median of three points")
    sp.add_argument("--tree", required=True)
    for k in ("x", "y", "z"):
        sp.add_argument(f"--{k}", required=True)

    sp = add("intersect", cmd_intersect, "do two balls of a model meet")
    sp.add_argument("--model", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)

    sp = add("graph", cmd_graph, "intersection graph of a model")
    sp.add_argument("--model", required=True)

    for name, fn, help in (
        ("unkiss", unkiss_model, "remove kissing pairs"),
        ("to-unit", nsi_to_unit, "equalise radii by branch grafting"),
        ("to-proper", _to_proper, "unit model, then proper model"),
    ):
        sp = add(name, lambda a, fn=fn: _transform(fn, a), help)
        sp.add_argument("--model", required=True)
        sp.add_argument("--report", help="write the step-by-step audit JSON here")

    sp = add("check-drawing", cmd_check_drawing, "verify friends sit closer than enemies")
    sp.add_argument("--signed", required=True)
    sp.add_argument("--drawing", required=True)

    sp = add("draw", cmd_draw, "valid drawing of a complete signed graph from a model of its positive part",
             aliases=("solve",))
    sp.add_argument("--signed", required=True)
    sp.add_argument("--model", required=True)

    sp = add("model-from-drawing", cmd_model_from_drawing, "ball model of the positive part from a valid drawing")
    sp.add_argument("--signed", required=True)
    sp.add_argument("--drawing", required=True)

    sp = add("roundtrip", cmd_roundtrip, "model -> drawing -> model check")
    sp.add_argument("--signed", required=True)
    sp.add_argument("--model", required=True)

    sp = add("recognize", cmd_recognize, "necessary-condition filter")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--balanced-max-order", type=int, default=None)

    sp = add("gen", cmd_gen, "generate instances")
    sp.add_argument("kind", choices=["interval", "tree", "random-unit", "random-nsi", "complete-signed"])
    sp.add_argument("--seed", type=int, default=None, help="default: $SCFE_SEED or 0")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--graph")
    sp.add_argument("--intervals")

    sp = add("render", cmd_render, "DOT/SVG/PNG picture of a tree, model or drawing")
    sp.add_argument("--input", required=True)
    sp.add_argument("--format", choices=FORMATS, default="svg")

    sp = sub.add_parser("report", help="pairwise TSV table and figures for a model")
    sp.set_defaults(fn=cmd_report)
    sp.add_argument("--model", required=True)
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--format", choices=("svg", "png"), default="svg")
    sp.add_argument("--transforms", action="store_true", help="also tabulate the unit and proper models")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.fn(args)
    except (InvalidInput, KeyError) as exc:
        print(f"scfe: input error: {exc}", file=sys.stderr)
        return 2
    except ScfeError as exc:
        print(f"scfe: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
