"""Command-line front door: parse, transform, analyze, plot, run, serve.

Exit codes: 0 success, 1 domain error (message prefixed with the error
name), 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Tuple

from . import catalog, pipeline as pipeline_mod
from .errors import CurveLabError
from .expr import expand, format_poly, is_identifier, parse, variables_in
from .poly import BivarPoly, as_fraction
from .raster import Viewport, render_svg
from .transforms import (BLOW_DOWN, BLOW_UP, TransformStep, blow_down,
                         blow_up, is_singular, tangent_cone)


class UsageError(Exception):
    """Bad flags or schema; maps to exit code 2."""


def _parse_vars(text: str) -> Tuple[str, str]:
    names = [n.strip() for n in text.split(",")]
    if len(names) != 2 or not all(is_identifier(n) for n in names) \
            or names[0] == names[1]:
        raise UsageError(f"--vars needs two distinct identifiers, got {text!r}")
    return names[0], names[1]


def _parse_rational(text: str, flag: str) -> Fraction:
    try:
        return as_fraction(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _parse_point(text: str) -> Tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--at needs 'u,v', got {text!r}")
    return (_parse_rational(parts[0].strip(), "--at"),
            _parse_rational(parts[1].strip(), "--at"))


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--expr", "-e", help="polynomial expression text")
    sub.add_argument("--curve", help="catalog slug to start from")
    sub.add_argument("--vars", help="variable pair, e.g. x,y")


def _resolve_input(args) -> Tuple[BivarPoly, Tuple[str, str],
                                  Optional[catalog.CatalogEntry]]:
    """Seed polynomial from --curve or --expr, canonicalized."""
    if (args.expr is None) == (args.curve is None):
        raise UsageError("give exactly one of --expr or --curve")
    if args.curve is not None:
        entry = catalog.get_entry(args.curve)
        if args.vars is not None and _parse_vars(args.vars) != entry.vars:
            raise UsageError(f"--vars disagrees with curve variables "
                             f"{','.join(entry.vars)}")
        return entry.poly, entry.vars, entry
    node = parse(args.expr)
    if args.vars is not None:
        pair = _parse_vars(args.vars)
    else:
        seen = variables_in(node)
        if len(seen) != 2:
            raise UsageError("cannot infer two variables from the expression; "
                             "pass --vars u,v")
        pair = (seen[0], seen[1])
    return expand(node, *pair).normalize(), pair, None


def _print_json(payload: dict) -> None:
    print(json.dumps(payload))


def cmd_parse(args) -> int:
    poly, pair, _ = _resolve_input(args)
    if args.json:
        _print_json({
            "poly": format_poly(poly),
            "vars": list(pair),
            "degree": None if poly.is_zero else poly.total_degree(),
            "terms": len(poly.terms),
        })
    else:
        print(format_poly(poly))
    return 0


def _build_step(args, kind: str) -> TransformStep:
    center = _parse_rational(args.center, "--center")
    return TransformStep(kind=kind, pivot=args.pivot, replaced=args.replaced,
                         new=args.new, center=center,
                         strict=getattr(args, "strict", False))


def cmd_blowdown(args) -> int:
    poly, _, _ = _resolve_input(args)
    result = blow_down(poly, _build_step(args, BLOW_DOWN))
    if args.json:
        _print_json({"poly": format_poly(result), "vars": list(result.vars)})
    else:
        print(format_poly(result))
    return 0


def cmd_blowup(args) -> int:
    poly, _, _ = _resolve_input(args)
    result = blow_up(poly, _build_step(args, BLOW_UP))
    if args.json:
        _print_json({
            "poly": format_poly(result.proper),
            "vars": list(result.proper.vars),
            "exceptional_multiplicity": result.exceptional_multiplicity,
        })
    else:
        print(format_poly(result.proper))
    return 0


def cmd_singular(args) -> int:
    poly, _, _ = _resolve_input(args)
    report = is_singular(poly, _parse_point(args.at))
    if args.json:
        _print_json({"status": report.status,
                     "multiplicity": report.multiplicity})
    elif report.status == "singular":
        print(f"singular (multiplicity {report.multiplicity})")
    elif report.status == "smooth":
        print("smooth")
    else:
        print("not on curve")
    return 0


def cmd_tangent_cone(args) -> int:
    poly, _, _ = _resolve_input(args)
    cone = tangent_cone(poly, _parse_point(args.at))
    if args.json:
        _print_json({
            "multiplicity": cone.multiplicity,
            "lines": [{"line": format_poly(line), "multiplicity": m}
                      for line, m in cone.lines],
            "residual": format_poly(cone.residual),
            "scale": cone.scale,
        })
    else:
        print(f"multiplicity {cone.multiplicity}")
        for line, m in cone.lines:
            print(f"line {format_poly(line)} (multiplicity {m})")
        print(f"residual {format_poly(cone.residual)}")
    return 0


def cmd_plot(args) -> int:
    poly, _, entry = _resolve_input(args)
    if args.viewport is not None:
        parts = args.viewport.split(",")
        if len(parts) != 4:
            raise UsageError("--viewport needs umin,umax,vmin,vmax")
        try:
            bounds = [float(p) for p in parts]
        except ValueError:
            raise UsageError(f"--viewport: not numbers: {args.viewport!r}") \
                from None
    elif entry is not None:
        bounds = list(entry.frame)
    else:
        raise UsageError("--viewport is required unless --curve is given")
    vp = Viewport(*bounds, cells_u=args.cells, cells_v=args.cells)
    svg = render_svg(poly, vp, width=args.width, axes=not args.no_axes)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(svg)
            handle.write("\n")
    else:
        print(svg)
    return 0


def cmd_catalog(args) -> int:
    entries = catalog.list_catalog()
    if args.json:
        _print_json({"curves": [{
            "slug": e.slug,
            "name": e.name,
            "expr": e.expr,
            "vars": list(e.vars),
            "figure": e.figure,
            "frame": list(e.frame),
        } for e in entries]})
    else:
        width = max(len(e.slug) for e in entries)
        for e in entries:
            print(f"{e.slug:<{width}}  {e.name}")
    return 0


def cmd_pipeline(args) -> int:
    try:
        loaded = pipeline_mod.load_pipeline(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file!r}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"bad pipeline file: {exc}") from None
    trace = pipeline_mod.run_pipeline(loaded)
    if args.dump_steps:
        for index, poly in enumerate(trace[:-1]):
            label = "seed" if index == 0 else f"step {index}"
            print(f"[{label}] {format_poly(poly)}")
    final = trace[-1]
    if args.json:
        _print_json({"poly": format_poly(final), "vars": list(final.vars),
                     "steps": len(loaded.steps)})
    else:
        print(format_poly(final))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port,
                log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvelab",
        description="Construct plane algebraic curves by imploding and "
                    "exploding points, analyze their singularities, and "
                    "render them as SVG.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("parse", help="echo the canonical polynomial")
    _add_input_flags(sub)
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_parse)

    sub = subs.add_parser("blowdown", help="implode a point (center, 0)")
    _add_input_flags(sub)
    sub.add_argument("--pivot", required=True)
    sub.add_argument("--replaced", required=True)
    sub.add_argument("--new", required=True)
    sub.add_argument("--center", required=True)
    sub.add_argument("--strict", action="store_true",
                     help="divide out leftover exceptional factors")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_blowdown)

    sub = subs.add_parser("blowup", help="explode a point (center, 0)")
    _add_input_flags(sub)
    sub.add_argument("--pivot", required=True)
    sub.add_argument("--replaced", required=True)
    sub.add_argument("--new", required=True)
    sub.add_argument("--center", required=True)
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_blowup)

    sub = subs.add_parser("singular", help="classify a rational point")
    _add_input_flags(sub)
    sub.add_argument("--at", required=True, help="point as u,v")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_singular)

    sub = subs.add_parser("tangent-cone",
                          help="tangent lines at a curve point")
    _add_input_flags(sub)
    sub.add_argument("--at", required=True, help="point as u,v")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_tangent_cone)

    sub = subs.add_parser("plot", help="render the curve as SVG")
    _add_input_flags(sub)
    sub.add_argument("--viewport",
                     help="umin,umax,vmin,vmax (write --viewport=-2,... "
                          "when the first bound is negative)")
    sub.add_argument("--cells", type=int, default=512)
    sub.add_argument("--width", type=int, default=640)
    sub.add_argument("--no-axes", action="store_true")
    sub.add_argument("--out", help="output file (default: stdout)")
    sub.set_defaults(func=cmd_plot)

    sub = subs.add_parser("catalog", help="list built-in curves")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_catalog)

    sub = subs.add_parser("pipeline", help="run a pipeline JSON file")
    sub.add_argument("file")
    sub.add_argument("--dump-steps", action="store_true",
                     help="print each intermediate polynomial")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_pipeline)

    sub = subs.add_parser("serve", help="start the HTTP service")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8642)
    sub.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CurveLabError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
