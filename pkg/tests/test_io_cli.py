import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from tropmod import cli, io
from tropmod import moduli
from tropmod.exceptions import ParseError, PreconditionError
from tropmod.lattice import LatticePolygon
from tropmod.moduli import DimensionReport
from tropmod.subdivision import Triangulation, honeycomb
from tropmod.svg import render_svg
from tropmod.tropical import dual_curve, skeletonize

from conftest import CHOPPED, SQUARE3, T4

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


def write(tmp_path, name, data):
    f = tmp_path / name
    f.write_text(json.dumps(data))
    return str(f)


def run_cli(args, capsys):
    code = cli.run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestJson:
    @given(fractions)
    def test_fraction_round_trip(self, x):
        assert io.parse_fraction(io.fraction_str(x)) == x

    @pytest.mark.parametrize("bad", [1.5, True, "1/0", "abc", None, [1]])
    def test_bad_fractions(self, bad):
        with pytest.raises(ParseError):
            io.parse_fraction(bad)

    def test_polygon_round_trip(self):
        p = LatticePolygon(CHOPPED)
        assert io.polygon_from_json(json.loads(io.dumps(io.polygon_to_json(p)))) == p

    def test_polygon_from_points(self):
        p = io.polygon_from_json({"points": [[0, 0], [2, 0], [0, 2], [1, 0]]})
        assert sorted(p.vertices) == [(0, 0), (0, 2), (2, 0)]

    @pytest.mark.parametrize("bad", [{}, {"vertices": [[0, 0.5]]}, {"vertices": "x"}, [1, 2], {"vertices": [[0, 0, 0]]}])
    def test_bad_polygons(self, bad):
        with pytest.raises(ParseError):
            io.polygon_from_json(bad)

    @settings(max_examples=20, deadline=None)
    @given(st.lists(fractions, min_size=16, max_size=16))
    def test_triangulation_round_trip(self, noise):
        t = honeycomb(LatticePolygon(T4))
        h = [v + x / 10**6 for v, x in zip(t.heights, noise)]
        t = t.with_heights(h)
        back = io.triangulation_from_json(json.loads(io.dumps(io.triangulation_to_json(t))))
        assert back == t and list(back.heights) == list(t.heights)

    def test_bad_triangle_index(self):
        with pytest.raises(ParseError):
            io.triangulation_from_json({"points": [[0, 0], [1, 0], [0, 1]], "triangles": [[0, 1, 3]]})

    def test_misaligned_heights(self):
        with pytest.raises(ParseError):
            io.triangulation_from_json({"points": [[0, 0], [1, 0], [0, 1]], "triangles": [[0, 1, 2]], "heights": [0]})

    @given(st.dictionaries(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), fractions, max_size=10))
    def test_heights_round_trip(self, h):
        assert io.heights_from_json(json.loads(io.dumps(io.heights_to_json(h)))) == h

    def test_report_round_trip(self):
        r = DimensionReport(9, "closed_form", {"g": 4, "r": 12, "c": 4})
        assert io.report_from_json(json.loads(io.dumps(io.report_to_json(r)))) == r

    def test_bad_report(self):
        with pytest.raises(ParseError):
            io.report_from_json({"value": "9"})

    def test_curve_json_exact(self, t4):
        t = honeycomb(t4)
        data = io.curve_to_json(dual_curve(t, t.heights))
        assert len(data["bounded_edges"]) == len(t.interior_edges)
        assert all(e["length"] == 1 for e in data["bounded_edges"])

    def test_load_errors(self, tmp_path):
        with pytest.raises(ParseError):
            io.load(tmp_path / "missing.json")
        f = tmp_path / "bad.json"
        f.write_text("{not json")
        with pytest.raises(ParseError):
            io.load(f)


class TestSvg:
    def test_unit_square(self):
        t = Triangulation.from_triangles(UNIT_SQUARE, [(0, 1, 2), (0, 2, 3)])
        svg = render_svg(triangulation=t)
        assert svg.count("<line") == 5 and svg.count("<circle") == 4

    def test_empty_scene(self):
        with pytest.raises(PreconditionError, match="empty scene"):
            render_svg()

    def test_full_scene_deterministic(self, t4):
        t = honeycomb(t4)
        c = dual_curve(t, t.heights)
        sk = skeletonize(c)
        a = render_svg(triangulation=t, curve=c, skeleton=sk)
        b = render_svg(triangulation=t, curve=c, skeleton=sk)
        assert a == b and a.startswith("<svg") and a.count("<g>") == 3
        assert a.count('class="ray"') == len(c.rays)
        assert a.count('class="skeleton"') == len(sk.edges)


class TestCli:
    def test_analyze(self, tmp_path, capsys):
        f = write(tmp_path, "t4.json", {"vertices": T4})
        code, out, _ = run_cli(["analyze", f], capsys)
        data = json.loads(out)
        assert code == 0 and data["genus"] == 3 and data["maximal"] and data["column_vectors"] == 6

    def test_analyze_batch_and_output(self, tmp_path, capsys):
        d = tmp_path / "polys"
        d.mkdir()
        write(d, "a.json", {"vertices": T4})
        write(d, "b.json", {"vertices": SQUARE3})
        out = tmp_path / "out.json"
        code, _, _ = run_cli(["analyze", str(d), "-o", str(out)], capsys)
        data = json.loads(out.read_text())
        assert code == 0 and data["a.json"]["genus"] == 3 and data["b.json"]["genus"] == 4

    def test_dim_closed(self, tmp_path, capsys):
        f = write(tmp_path, "c.json", {"vertices": CHOPPED})
        code, out, _ = run_cli(["dim", f, "--closed"], capsys)
        assert code == 0 and json.loads(out)["value"] == 9

    def test_triangulate_then_dim(self, tmp_path, capsys):
        f = write(tmp_path, "t4.json", {"vertices": T4})
        tri = tmp_path / "tri.json"
        assert run_cli(["triangulate", f, "--honeycomb", "-o", str(tri)], capsys)[0] == 0
        code, out, _ = run_cli(["dim", str(tri), "--formula"], capsys)
        assert code == 0 and json.loads(out)["value"] == 6
        code, out, _ = run_cli(["dim", str(tri), "--oracle"], capsys)
        assert code == 0 and json.loads(out)["method"] == "rank_oracle"

    def test_triangulate_heights(self, tmp_path, capsys):
        f = write(tmp_path, "sq.json", {"vertices": UNIT_SQUARE})
        h = write(tmp_path, "h.json", {"heights": [[0, 0, 0], [1, 0, 0], [1, 1, 1], [0, 1, 0]]})
        code, out, _ = run_cli(["triangulate", f, "--heights", h], capsys)
        assert code == 0 and len(json.loads(out)["triangles"]) == 2
        h = write(tmp_path, "z.json", {"heights": [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]})
        code, out, _ = run_cli(["triangulate", f, "--heights", h], capsys)
        assert code == 0 and len(json.loads(out)["cells"]) == 1

    def test_enumerate(self, tmp_path, capsys):
        f = write(tmp_path, "t3.json", {"vertices": [[0, 0], [3, 0], [0, 3]]})
        code, out, _ = run_cli(["enumerate", f, "--regular"], capsys)
        data = json.loads(out)
        assert code == 0 and data["count"] == 79 and data["regular"] == 79 and not data["capped"]

    def test_enumerate_guard(self, tmp_path, capsys):
        f = write(tmp_path, "big.json", {"vertices": [[0, 0], [4, 0], [4, 4], [0, 4]]})
        code, _, err = run_cli(["enumerate", f], capsys)
        assert code == 3 and "instance too large; set a cap" in err
        code, out, _ = run_cli(["enumerate", f, "--cap", "3"], capsys)
        assert code == 0 and json.loads(out)["capped"]

    def test_hyperelliptic(self, capsys):
        code, out, _ = run_cli(["hyperelliptic", "--genus", "3"], capsys)
        data = json.loads(out)
        assert code == 0 and len(data["maximal_polygons"]) == 5 and data["strip_dimension"]["value"] == 5

    def test_classify2g1(self, capsys):
        code, out, _ = run_cli(["classify2g1", "--genus", "10"], capsys)
        data = json.loads(out)
        assert code == 0 and [p["dim"] for p in data["polygons"]] == [21, 21]

    def test_render(self, tmp_path, capsys):
        f = write(tmp_path, "t4.json", {"vertices": T4})
        tri = tmp_path / "tri.json"
        run_cli(["triangulate", f, "--beehive", "-o", str(tri)], capsys)
        svg = tmp_path / "out.svg"
        assert run_cli(["render", str(tri), "--svg", str(svg)], capsys)[0] == 0
        text = svg.read_text()
        assert text.count("<g>") == 3
        svg2 = tmp_path / "out2.svg"
        run_cli(["render", str(tri), "--svg", str(svg2)], capsys)
        assert svg2.read_text() == text

    def test_render_polygon_only(self, tmp_path, capsys):
        f = write(tmp_path, "sq.json", {"vertices": UNIT_SQUARE})
        svg = tmp_path / "sq.svg"
        assert run_cli(["render", f, "--svg", str(svg)], capsys)[0] == 0
        assert svg.read_text().count("<line") == 4

    def test_parse_error_exit(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text("[")
        code, _, err = run_cli(["analyze", str(f)], capsys)
        assert code == 2 and "parse error" in err

    def test_precondition_exit(self, tmp_path, capsys):
        f = write(tmp_path, "h.json", {"vertices": [[0, 0], [0, 2], [4, 0], [4, 2]]})
        code, _, err = run_cli(["dim", f, "--closed"], capsys)
        assert code == 3 and "precondition" in err

    def test_wrong_file_kind(self, tmp_path, capsys):
        f = write(tmp_path, "t4.json", {"vertices": T4})
        assert run_cli(["dim", f, "--formula"], capsys)[0] == 3

    def test_mismatch_exit(self, tmp_path, capsys, monkeypatch):
        # force the two branches apart and check the failure surfaces with its own exit code
        monkeypatch.setattr(moduli, "moduli_rank", lambda t: -1)
        monkeypatch.setattr(cli, "dim_MT", lambda t, method: moduli.dim_MT(t, "both"))
        f = write(tmp_path, "t4.json", {"vertices": T4})
        tri = tmp_path / "tri.json"
        run_cli(["triangulate", f, "--honeycomb", "-o", str(tri)], capsys)
        code, _, err = run_cli(["dim", str(tri), "--formula"], capsys)
        assert code == 4 and "formula/oracle mismatch" in err

    def test_deterministic_output(self, tmp_path, capsys):
        f = write(tmp_path, "sq.json", {"vertices": SQUARE3})
        a = run_cli(["triangulate", f, "--beehive"], capsys)[1]
        b = run_cli(["triangulate", f, "--beehive"], capsys)[1]
        assert a == b

    def test_console_script(self, tmp_path):
        f = write(tmp_path, "t4.json", {"vertices": T4})
        res = subprocess.run([sys.executable, "-m", "tropmod", "analyze", f], capture_output=True, text=True)
        assert res.returncode == 0 and json.loads(res.stdout)["genus"] == 3
