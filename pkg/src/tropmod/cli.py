"""Command-line interface.

Exit status is 0 on success, 2 for unreadable or malformed input, 3 when an
input violates a precondition and 4 when the formula and the rank oracle
disagree.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .exceptions import FormulaMismatchError, ParseError, PreconditionError, TropmodError
from .hyperelliptic import is_maximal_hyperelliptic, maximal_hyperelliptic, strip_dimension
from .lattice import classify, column_count, interior_hull, is_maximal, lattice_width
from .moduli import dim_MDelta_closed, dim_MDelta_exhaustive, dim_MT, theorem_2g1_polygons
from .subdivision import beehive, enumerate_unimodular, honeycomb, induce, is_regular, prune
from .subdivision.regular import height_map
from .svg import render_svg
from .tropical import dual_curve, skeletonize

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4


def _inputs(path: str) -> list[tuple[str, object]]:
    """One JSON document per file; a directory yields its ``*.json`` files in name order."""
    p = Path(path)
    if p.is_dir():
        return [(f.name, io.load(f)) for f in sorted(p.glob("*.json"))]
    return [(p.name, io.load(p))]


def _batch(path: str, fn) -> object:
    items = _inputs(path)
    if Path(path).is_dir():
        return {name: fn(data) for name, data in items}
    return fn(items[0][1])


def _analyze(data) -> dict:
    p = io.polygon_from_json(data)
    ih = interior_hull(p)
    cls = classify(p)
    out = {
        "vertices": [list(v) for v in p.vertices],
        "genus": p.genus,
        "boundary_points": p.num_boundary,
        "lattice_points": len(p.lattice_points),
        "interior_polygon": {"kind": ih.kind, "vertices": [list(v) for v in ih.points]},
        "classification": cls.kind,
        "lattice_width": lattice_width(p),
    }
    if cls.kind == "nonhyperelliptic":
        out["maximal"] = is_maximal(p)
        if out["maximal"]:
            out["column_vectors"] = column_count(p)
    elif cls.kind == "hyperelliptic":
        out["maximal"] = is_maximal_hyperelliptic(p)
    return out


def _is_triangulation(data) -> bool:
    return isinstance(data, dict) and "triangles" in data


def _triangulate(args) -> dict:
    p = io.load_polygon(args.polygon)
    if args.honeycomb:
        t = honeycomb(p)
    elif args.beehive:
        t = beehive(p)
    else:
        h = io.heights_from_json(io.load(args.heights))
        sub = induce(p, height_map(p.lattice_points, h))
        if not sub.is_triangulation():
            return {"cells": [[list(q) for q in m] for m in sub.marked]}
        t = sub.to_triangulation(sub.heights)
    return io.triangulation_to_json(t)


def _enumerate(args) -> dict:
    p = io.load_polygon(args.polygon)
    ts = list(enumerate_unimodular(p, args.cap))
    out: dict = {"count": len(ts), "capped": args.cap is not None and len(ts) >= args.cap}
    if args.regular:
        out["regular"] = sum(1 for t in ts if is_regular(t))
    if args.list:
        out["triangulations"] = [io.triangulation_to_json(t) for t in ts]
    return out


def _dim_one(args, data) -> dict:
    if args.formula or args.oracle:
        if not _is_triangulation(data):
            raise PreconditionError("--formula and --oracle take a triangulation file")
        t = io.triangulation_from_json(data)
        return dim_MT(t, "formula" if args.formula else "oracle").to_json()
    if _is_triangulation(data):
        raise PreconditionError("--closed and --exhaustive take a polygon file")
    p = io.polygon_from_json(data)
    if args.closed:
        return dim_MDelta_closed(p).to_json()
    return dim_MDelta_exhaustive(p, cap=args.cap).to_json()


def _hyperelliptic(args) -> dict:
    g = args.genus
    return {
        "genus": g,
        "maximal_polygons": [p.to_json()["vertices"] for p in maximal_hyperelliptic(g)],
        "strip_dimension": strip_dimension(g).to_json(),
    }


def _render(args) -> str:
    data = io.load(args.input)
    if not _is_triangulation(data):
        return render_svg(polygon=io.polygon_from_json(data))
    t = io.triangulation_from_json(data)
    heights = t.heights
    if args.heights:
        heights = io.heights_from_json(io.load(args.heights))
    if heights is None:
        return render_svg(triangulation=t)
    curve = dual_curve(t, heights)
    skeleton = None
    if t.polygon.genus >= 2:
        tp = prune(t.with_heights(height_map(t.points, heights)))
        skeleton = skeletonize(dual_curve(tp, tp.heights))
    return render_svg(triangulation=t, curve=curve, skeleton=skeleton)


def _classify2g1(args) -> dict:
    out = []
    for p in theorem_2g1_polygons(args.genus):
        out.append({"vertices": p.to_json()["vertices"], "genus": p.genus, "dim": dim_MDelta_closed(p).value})
    return {"genus": args.genus, "polygons": out}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tropmod", description="Dimensions of moduli of tropical plane curves.")
    sub = ap.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("analyze", help="polygon invariants")
    s.add_argument("polygon", help="polygon JSON file or a directory of them")
    s.add_argument("-o", "--output")

    s = sub.add_parser("triangulate", help="build a triangulation")
    s.add_argument("polygon")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--beehive", action="store_true")
    g.add_argument("--honeycomb", action="store_true")
    g.add_argument("--heights", metavar="FILE")
    s.add_argument("-o", "--output")

    s = sub.add_parser("enumerate", help="unimodular triangulations")
    s.add_argument("polygon")
    s.add_argument("--cap", type=int)
    s.add_argument("--regular", action="store_true", help="also count the regular ones")
    s.add_argument("--list", action="store_true", help="include every triangulation")
    s.add_argument("-o", "--output")

    s = sub.add_parser("dim", help="moduli dimensions")
    s.add_argument("input", help="polygon or triangulation JSON file, or a directory")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula", action="store_true")
    g.add_argument("--oracle", action="store_true")
    g.add_argument("--closed", action="store_true")
    g.add_argument("--exhaustive", action="store_true")
    s.add_argument("--cap", type=int)
    s.add_argument("-o", "--output")

    s = sub.add_parser("hyperelliptic", help="maximal hyperelliptic polygons and the strip dimension")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("-o", "--output")

    s = sub.add_parser("render", help="SVG drawing")
    s.add_argument("input", help="polygon or triangulation JSON")
    s.add_argument("--svg", required=True, metavar="OUT")
    s.add_argument("--heights", metavar="FILE")

    s = sub.add_parser("classify2g1", help="polygons attaining 2g+1")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("-o", "--output")
    return ap


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "render":
            Path(args.svg).write_text(_render(args))
            return 0
        if args.verb == "analyze":
            result = _batch(args.polygon, _analyze)
        elif args.verb == "triangulate":
            result = _triangulate(args)
        elif args.verb == "enumerate":
            result = _enumerate(args)
        elif args.verb == "dim":
            result = _batch(args.input, lambda d: _dim_one(args, d))
        elif args.verb == "hyperelliptic":
            result = _hyperelliptic(args)
        else:
            result = _classify2g1(args)
        _emit(io.dumps(result), args.output)
        return 0
    except ParseError as exc:
        print(f"tropmod: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FormulaMismatchError as exc:
        print(f"tropmod: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (PreconditionError, TropmodError) as exc:
        print(f"tropmod: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main() -> None:
    sys.exit(run())
