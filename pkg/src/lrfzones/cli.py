"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 domain precondition violated,
4 I/O failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, List, Optional

from . import serialize as ser
from .errors import DomainError
from .geometry import Point2, Rect, build_layout, compute_expansion, validate_layout
from .partition import assign
from .render import OVERLAYS, RenderSpec, render_svg
from .simulation import coverage_map, run_scenario

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4



def _point(text: str) -> Point2:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y but got {text!r}")
    try:
        return Point2(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y numbers but got {text!r}") from None


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)


def _square(side: Optional[float]) -> Optional[Rect]:
    if side is None:
        return None
    return Rect(-0.5 * side, 0.5 * side, -0.5 * side, 0.5 * side)


def cmd_expand(args: argparse.Namespace) -> int:
    cfg = ser.load_config(args.config)
    exp = compute_expansion(cfg.robot, cfg.human)
    sys.stdout.write(ser.dumps(ser.expansion_to_dict(exp)))
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    cfg = ser.load_config(args.config)
    layout = build_layout(cfg.robot, cfg.human, cfg.model)
    report = validate_layout(layout, cfg.human)
    if args.format == "csv":
        text = ser.to_csv(("name", "x", "y"), ser.layout_rows(layout))
    else:
        text = ser.dumps(ser.layout_to_dict(layout, report))
    _emit(text, args.out)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    cfg = ser.load_config(args.config)
    layout = build_layout(cfg.robot, cfg.human, cfg.model)
    sys.stdout.write(ser.dumps(ser.assignment_to_dict(assign(layout, args.point))))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = ser.load_scenario(args.scenario)
    report = run_scenario(scenario)
    _emit(ser.dumps(ser.report_to_dict(report)), args.out)
    if args.csv:
        _write(args.csv, ser.steps_csv(report))
    return EXIT_OK


def cmd_coverage(args: argparse.Namespace) -> int:
    cfg = ser.load_config(args.config)
    layout = build_layout(cfg.robot, cfg.human, cfg.model)
    grid = coverage_map(layout, _square(args.window), args.resolution)
    if args.out:
        _write(args.out, ser.grid_csv(grid))
    sys.stdout.write(ser.dumps(ser.coverage_summary_dict(grid)))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    cfg = ser.load_config(args.config)
    names = [n.strip() for n in args.overlays.split(",") if n.strip()]
    try:
        spec = RenderSpec.from_names(names, args.point or ())
    except ValueError as exc:
        raise ser.ConfigError(f"--overlays: {exc}") from None
    layout = build_layout(cfg.robot, cfg.human, cfg.model)
    _write(args.out, render_svg(layout, spec, _square(args.window)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrfzones",
        description="LRF layouts, region partitioning and lock-state simulation for front-following robots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="resolve the expansion factor and widths")
    p.add_argument("config")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("layout", help="key points, rectangles and LRF mounts")
    p.add_argument("config")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("classify", help="region and responsible LRF units of one point")
    p.add_argument("config")
    p.add_argument("--point", type=_point, required=True, metavar="X,Y")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="replay a trajectory scenario")
    p.add_argument("scenario")
    p.add_argument("--out", help="JSON report path (default stdout)")
    p.add_argument("--csv", help="per-step CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("coverage", help="coverage-multiplicity grid")
    p.add_argument("config")
    p.add_argument("--window", type=_positive, metavar="W",
                   help="side of a square window centered on the origin (m)")
    p.add_argument("--resolution", type=_positive, default=0.05, metavar="R", help="cell size (m)")
    p.add_argument("--out", help="grid CSV path")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("render", help="SVG figure of the layout")
    p.add_argument("config")
    p.add_argument("--out", required=True)
    p.add_argument("--overlays", default=",".join(OVERLAYS),
                   help=f"comma-separated subset of {','.join(OVERLAYS)}")
    p.add_argument("--point", type=_point, action="append", metavar="X,Y", help="sample point (repeatable)")
    p.add_argument("--window", type=_positive, metavar="W")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except ser.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
