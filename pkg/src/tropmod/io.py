"""JSON serialisation with exact fraction strings."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exceptions import ParseError
from .lattice import LatticePolygon
from .subdivision.triangulation import Triangulation


def fraction_str(x) -> str | int:
    """Integers stay integers; other rationals become "p/q"."""
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_fraction(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"expected an integer or a fraction string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad fraction {x!r}") from exc
    raise ParseError(f"expected an integer or a fraction string, got {x!r}")


def _point(x) -> tuple:
    if not isinstance(x, (list, tuple)) or len(x) != 2 or not all(isinstance(c, int) and not isinstance(c, bool) for c in x):
        raise ParseError(f"expected an integer point [x, y], got {x!r}")
    return (x[0], x[1])


def _points(data, key: str) -> list:
    if not isinstance(data, dict) or key not in data or not isinstance(data[key], list):
        raise ParseError(f"expected an object with a list {key!r}")
    return [_point(q) for q in data[key]]


def polygon_to_json(p: LatticePolygon) -> dict:
    return p.to_json()


def polygon_from_json(data: Any) -> LatticePolygon:
    """Accepts {"vertices": [...]} or {"points": [...]}; the hull is taken."""
    key = "vertices" if isinstance(data, dict) and "vertices" in data else "points"
    pts = _points(data, key)
    return LatticePolygon(pts)


def triangulation_to_json(t: Triangulation) -> dict:
    out: dict = {"points": [list(q) for q in t.points], "triangles": [list(tri) for tri in t.triangles]}
    if t.heights is not None:
        out["heights"] = [fraction_str(h) for h in t.heights]
    return out


def triangulation_from_json(data: Any) -> Triangulation:
    pts = _points(data, "points")
    tris = data.get("triangles")
    if not isinstance(tris, list):
        raise ParseError("expected a list 'triangles'")
    for tri in tris:
        if not isinstance(tri, list) or len(tri) != 3 or not all(isinstance(i, int) and 0 <= i < len(pts) for i in tri):
            raise ParseError(f"bad triangle {tri!r}")
    heights = data.get("heights")
    if heights is not None:
        if not isinstance(heights, list) or len(heights) != len(pts):
            raise ParseError("heights must be a list aligned with points")
        heights = [parse_fraction(h) for h in heights]
    t = Triangulation.from_triangles(pts, tris, heights)
    if list(t.points) != pts:
        raise ParseError("duplicate points")
    t.check()
    return t


def heights_to_json(h: dict) -> dict:
    return {"heights": [[q[0], q[1], fraction_str(v)] for q, v in sorted(h.items())]}


def heights_from_json(data: Any) -> dict:
    """Heights as a list of [x, y, value] triples under "heights"."""
    if not isinstance(data, dict) or not isinstance(data.get("heights"), list):
        raise ParseError("expected an object with a list 'heights'")
    out = {}
    for item in data["heights"]:
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(f"bad height entry {item!r}")
        out[_point(item[:2])] = parse_fraction(item[2])
    return out


def curve_to_json(curve) -> dict:
    t = curve.triangulation
    return {
        "vertices": [[fraction_str(x), fraction_str(y)] for x, y in curve.vertices],
        "bounded_edges": [
            {"dual": [list(t.points[e[0]]), list(t.points[e[1]])], "ends": list(ends), "length": fraction_str(ln)}
            for e, ends, ln in curve.bounded_edges
        ],
        "rays": [
            {"dual": [list(t.points[e[0]]), list(t.points[e[1]])], "start": ti, "direction": list(d)}
            for e, ti, d in curve.rays
        ],
    }


def report_to_json(report) -> dict:
    return report.to_json()


def report_from_json(data: Any):
    from .moduli import DimensionReport

    if not isinstance(data, dict) or not isinstance(data.get("value"), int) or not isinstance(data.get("method"), str):
        raise ParseError("expected a dimension report")
    return DimensionReport(data["value"], data["method"], dict(data.get("witnesses", {})))


def dumps(data: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_polygon(path: str | Path) -> LatticePolygon:
    return polygon_from_json(load(path))
