"""Command-line surface: file I/O, subcommands, and SVG figures.

Subcommands: cap, check, solve, project, classify, sweep, render.
Exit codes: 0 success (cap constructed / closure holds), 1 input error,
2 cap positivity failure, 3 closure check failed.

The default closure tolerance is 1e-9 relative to perimeter and can be
overridden globally through the ``CAPFORGE_TOLERANCE`` environment variable
or per call with ``--tolerance``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from . import __version__
from .capcore import (
    CLOSURE_TOL,
    CapConstructionError,
    CapCurve,
    DefectProfile,
    cap_report,
    construct_cap,
)
from .geom import Polygon, PolygonError
from .shapes import Circle, Ellipse, PolygonResample, gap_sweep
from .solve import classify_quadrilateral, classify_triangle, project_to_closed, solve_free_vertex

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_POSITIVITY = 2
EXIT_NOT_CLOSED = 3


class InputError(ValueError):
    """Bad command line usage or unusable input file."""


# ---------------------------------------------------------------------------
# SVG rendering


@dataclass(frozen=True)
class RenderSpec:
    """Figure styling: the polygon is drawn filled at low opacity, the cap
    curve as a contrasting polyline, and a nonzero gap as a dashed segment
    between the curve's endpoints."""

    width: int = 640
    height: int = 480
    polygon_fill: str = "#89a7c8"
    polygon_opacity: float = 0.35
    polygon_stroke: str = "#1f3d5c"
    cap_stroke: str = "#c23b22"
    gap_stroke: str = "#222222"
    label_vertices: bool = False
    mark_gap: bool = True

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("render dimensions must be positive")


def render_svg(polygon: Polygon, curve: CapCurve, spec: RenderSpec | None = None,
               tolerance: float = CLOSURE_TOL) -> str:
    """SVG overlay of a polygon and its cap curve.

    Output is deterministic for identical inputs apart from the version
    comment line.
    """
    spec = spec or RenderSpec()
    points = list(polygon.vertices) + list(curve.vertices)
    xs = [z.real for z in points]
    ys = [z.imag for z in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-30)
    pad = 0.05 * span
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    scale = min(spec.width / (x1 - x0), spec.height / (y1 - y0))
    ox = 0.5 * (spec.width - scale * (x1 - x0))
    oy = 0.5 * (spec.height - scale * (y1 - y0))

    def px(z: complex) -> str:
        # SVG's y axis points down.
        return f"{ox + scale * (z.real - x0):.3f},{oy + scale * (y1 - z.imag):.3f}"

    poly_path = "M " + " L ".join(px(v) for v in polygon.vertices) + " Z"
    cap_path = "M " + " L ".join(px(v) for v in curve.vertices)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f"<!-- capforge {__version__} -->",
        f'<path d="{poly_path}" fill="{spec.polygon_fill}" '
        f'fill-opacity="{spec.polygon_opacity}" stroke="{spec.polygon_stroke}" '
        f'stroke-width="1.5"/>',
        f'<path d="{cap_path}" fill="none" stroke="{spec.cap_stroke}" '
        f'stroke-width="1.5"/>',
    ]
    if spec.mark_gap and abs(curve.gap) > tolerance * polygon.perimeter:
        a = px(curve.vertices[-1]).split(",")
        b = px(curve.vertices[0]).split(",")
        lines.append(
            f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
            f'stroke="{spec.gap_stroke}" stroke-width="1" stroke-dasharray="5 4"/>'
        )
    if spec.label_vertices:
        for k, v in enumerate(polygon.vertices, start=1):
            x, y = px(v).split(",")
            lines.append(f'<text x="{x}" y="{y}" font-size="11">v{k}</text>')
        for k, v in enumerate(curve.vertices, start=1):
            x, y = px(v).split(",")
            lines.append(f'<text x="{x}" y="{y}" font-size="11" '
                         f'fill="{spec.cap_stroke}">c{k}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Shared option handling


def _resolve_tolerance(ns: argparse.Namespace) -> float:
    tol = ns.tolerance
    if tol is None:
        raw = os.environ.get("CAPFORGE_TOLERANCE")
        if raw is None:
            return CLOSURE_TOL
        try:
            tol = float(raw)
        except ValueError:
            raise InputError(f"CAPFORGE_TOLERANCE is not a number: {raw!r}")
    if not (math.isfinite(tol) and tol > 0.0):
        raise InputError(f"tolerance must be a positive number, got {tol!r}")
    return tol


def _resolve_defects(ns: argparse.Namespace, n: int) -> DefectProfile:
    text = (ns.defects or "uniform").strip()
    if text.lower() == "uniform":
        return DefectProfile.uniform(n)
    try:
        values = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError(f"--defects must be 'uniform' or a comma list of radians, got {text!r}")
    if len(values) != n:
        raise InputError(f"--defects has {len(values)} entries, polygon has {n} vertices")
    try:
        return DefectProfile(tuple(values))
    except ValueError as exc:
        raise InputError(str(exc))


def _check_format(ns: argparse.Namespace, allowed: tuple[str, ...]) -> str:
    fmt = ns.format or allowed[0]
    if fmt not in allowed:
        raise InputError(f"this command emits {'/'.join(allowed)}, not {fmt!r}")
    return fmt


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


def _load_polygon(path: str) -> Polygon:
    try:
        return Polygon.from_json_dict(_load_json(path))
    except PolygonError as exc:
        raise InputError(f"invalid polygon in {path}: {exc}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_cap(ns: argparse.Namespace) -> int:
    tol = _resolve_tolerance(ns)
    fmt = _check_format(ns, ("json", "svg"))
    poly = _load_polygon(ns.input)
    defects = _resolve_defects(ns, poly.n)
    try:
        curve = construct_cap(poly, defects,
                              continue_on_failure=ns.continue_on_negative_angle)
    except CapConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POSITIVITY
    if fmt == "svg":
        _emit(render_svg(poly, curve, tolerance=tol), ns.out)
    else:
        _emit(_dump(curve.to_json_dict()), ns.out)
    if ns.svg:
        _emit(render_svg(poly, curve, tolerance=tol), ns.svg)
    if not curve.positivity_ok:
        bad = [str(k + 2) for k, ok in enumerate(curve.flags) if not ok]
        print(f"warning: nonpositive cap angle at vertex {', '.join(bad)}",
              file=sys.stderr)
        return EXIT_POSITIVITY
    return EXIT_OK


def cmd_check(ns: argparse.Namespace) -> int:
    tol = _resolve_tolerance(ns)
    _check_format(ns, ("json",))
    poly = _load_polygon(ns.input)
    defects = _resolve_defects(ns, poly.n)
    report = cap_report(poly, defects, tol=tol)
    _emit(_dump(report.to_json_dict()), ns.out)
    if not report.closed:
        print(f"not closed: gap {report.gap.real!r}{report.gap.imag:+}j "
              f"(relative {report.gap_rel:.3e})", file=sys.stderr)
        return EXIT_NOT_CLOSED
    return EXIT_OK


def cmd_solve(ns: argparse.Namespace) -> int:
    _check_format(ns, ("json",))
    data = _load_json(ns.input)
    raw = data.get("vertices") if isinstance(data, dict) else None
    if not isinstance(raw, list) or len(raw) < 3:
        raise InputError('solve input must be {"vertices": [...]} with at least 3 entries')
    n = len(raw)
    free: list[int] = [k + 1 for k, entry in enumerate(raw) if entry is None]
    if ns.index is not None:
        if not 1 <= ns.index <= n:
            raise InputError(f"--index {ns.index} out of range 1..{n}")
        if free and free != [ns.index]:
            raise InputError(f"--index {ns.index} does not match the null vertex at {free}")
        free = [ns.index]
    if len(free) != 1:
        raise InputError("exactly one vertex must be null (or selected with --index)")
    j = free[0]
    fixed = []
    for k, entry in enumerate(raw, start=1):
        if k == j:
            continue
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise InputError(f"vertex {k} must be an [x, y] pair, got {entry!r}")
        fixed.append((k, complex(float(entry[0]), float(entry[1]))))
    solved = solve_free_vertex(fixed, j, n)
    vertices = [v for _, v in fixed]
    vertices.insert(j - 1, solved)
    payload = {
        "vertices": [[v.real, v.imag] for v in vertices],
        "solved_index": j,
        "solved_vertex": [solved.real, solved.imag],
    }
    _emit(_dump(payload), ns.out)
    try:
        Polygon(tuple(vertices))
    except PolygonError as exc:
        print(f"warning: completed chain is not a valid polygon: {exc}", file=sys.stderr)
    return EXIT_OK


def cmd_project(ns: argparse.Namespace) -> int:
    _check_format(ns, ("json",))
    poly = _load_polygon(ns.input)
    import warnings as _warnings

    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always")
        projected = project_to_closed(poly)
    _emit(_dump(projected.to_json_dict()), ns.out)
    for item in caught:
        print(f"warning: {item.message}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(ns: argparse.Namespace) -> int:
    tol = _resolve_tolerance(ns)
    _check_format(ns, ("json",))
    poly = _load_polygon(ns.input)
    if poly.n == 3:
        verdict = classify_triangle(poly, tol)
    elif poly.n == 4:
        verdict = classify_quadrilateral(poly, tol)
    else:
        raise InputError(f"classification covers triangles and quadrilaterals, got {poly.n} vertices")
    _emit(_dump(verdict.to_json_dict()), ns.out)
    return EXIT_OK


def _parse_shape(text: str):
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "circle":
        try:
            return Circle(float(arg) if arg else 1.0)
        except ValueError as exc:
            raise InputError(str(exc))
    if kind == "ellipse":
        parts = arg.split(",")
        if len(parts) != 2:
            raise InputError("ellipse shape needs two semi-axes, e.g. ellipse:2,1")
        try:
            return Ellipse(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise InputError(str(exc))
    if kind == "polygon":
        if not arg:
            raise InputError("polygon shape needs a file, e.g. polygon:square.json")
        return PolygonResample(_load_polygon(arg))
    raise InputError(f"unknown shape {text!r} (use circle[:r], ellipse:a,b, polygon:file)")


def _parse_n_list(text: str) -> list[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"--n-list must be like '3..64' or '8,16,32', got {text!r}")
    if not values:
        raise InputError("--n-list is empty")
    return values


def cmd_sweep(ns: argparse.Namespace) -> int:
    _check_format(ns, ("csv",))
    shape = _parse_shape(ns.shape)
    n_values = _parse_n_list(ns.n_list)
    try:
        series = gap_sweep(shape, n_values)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(series.to_csv(), ns.out)
    return EXIT_OK


def cmd_render(ns: argparse.Namespace) -> int:
    tol = _resolve_tolerance(ns)
    _check_format(ns, ("svg",))
    poly = _load_polygon(ns.input)
    defects = _resolve_defects(ns, poly.n)
    curve = construct_cap(poly, defects, continue_on_failure=True)
    try:
        spec = RenderSpec(width=ns.width, height=ns.height, label_vertices=ns.labels)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(render_svg(poly, curve, spec, tolerance=tol), ns.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 1 instead of argparse's 2
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None,
                        help="relative closure tolerance "
                             "(default: CAPFORGE_TOLERANCE env var, else 1e-9)")
    common.add_argument("--defects", default="uniform",
                        help="'uniform' or a comma list of per-vertex defects in "
                             "radians summing to 4*pi")
    common.add_argument("--continue-on-negative-angle", action="store_true",
                        help="draw the full cap curve even past vertices whose "
                             "prescribed angle is not positive (still exits 2)")
    common.add_argument("--format", choices=("json", "csv", "svg"), default=None,
                        help="output format (each command has a natural default)")
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    parser = _Parser(prog="capforge",
                     description="Cap construction, closure checks, and sweeps "
                                 "for polygons with prescribed angular defects.")
    parser.add_argument("--version", action="version", version=f"capforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cap", parents=[common], help="construct the cap curve")
    p.add_argument("input", help="polygon JSON file")
    p.add_argument("--svg", default=None, help="also write an SVG figure here")
    p.set_defaults(func=cmd_cap)

    p = sub.add_parser("check", parents=[common],
                       help="closure report (exit 0 closed, 3 not closed)")
    p.add_argument("input", help="polygon JSON file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common],
                       help="place one free vertex so the cap closes")
    p.add_argument("input", help="polygon JSON file with one null vertex")
    p.add_argument("--index", type=int, default=None,
                   help="1-based index of the free vertex")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("project", parents=[common],
                       help="minimally move all vertices onto the closure constraint")
    p.add_argument("input", help="polygon JSON file")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("classify", parents=[common],
                       help="triangle/quadrilateral closure classification")
    p.add_argument("input", help="polygon JSON file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", parents=[common], help="gap-vs-n CSV series")
    p.add_argument("--shape", required=True,
                   help="circle[:r], ellipse:a,b, or polygon:file.json")
    p.add_argument("--n-list", required=True, dest="n_list",
                   help="'3..64' or comma list like '8,16,32,64'")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", parents=[common],
                       help="SVG figure of a polygon and its cap curve")
    p.add_argument("input", help="polygon JSON file")
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--labels", action="store_true", help="label vertices")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        return ns.func(ns)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POSITIVITY
    except (PolygonError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
