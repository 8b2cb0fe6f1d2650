import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from conftest import random_polygon
from evolab import cli, generators, io
from evolab.dynamics import iterate
from evolab.errors import EmptyInput
from evolab.geometry import Polygon, quasiperimeter
from evolab.harmonics import harmonic_polygon
from evolab.p_evolute import p_evolute_transform
from evolab.svg import render_svg

NS = "{http://www.w3.org/2000/svg}"


# -- generators ------------------------------------------------------------------


def test_generators_are_reproducible():
    a = generators.from_spec("random-ngon:6", 7)
    b = generators.from_spec("random-ngon:6", 7)
    assert np.array_equal(a.alpha, b.alpha) and np.array_equal(a.p, b.p)
    assert not np.array_equal(a.p, generators.from_spec("random-ngon:6", 8).p)


def test_trial_streams_independent_of_count():
    a = generators.trial_rngs(3, 5)[2].uniform(size=4)
    b = generators.trial_rngs(3, 9)[2].uniform(size=4)
    assert np.array_equal(a, b)


def test_random_ngon_is_hedgehog():
    P = generators.random_ngon(generators.rng(1), 7)
    steps = np.mod(np.diff(np.append(P.alpha, P.alpha[0])), 2 * math.pi)
    assert np.all(steps > 0) and math.isclose(steps.sum(), 2 * math.pi)
    assert np.all(np.abs(P.p) <= 1)


def test_zero_qp_generator():
    P = generators.from_spec("random-zero-qp:5", 2)
    assert abs(quasiperimeter(P)) < 1e-12


def test_degenerate_pentagon_angles():
    from evolab.geometry import alternating_sums

    g = generators.rng(4)
    for _ in range(5):
        P = generators.degenerate_pentagon(g)
        _, B = alternating_sums(P.alpha)
        assert abs(np.sin(2 * B).sum()) < 1e-12


def test_parallel_hexagon():
    P = generators.random_parallel_hexagon(generators.rng(5))
    assert np.allclose(np.exp(1j * P.alpha[3:]), -np.exp(1j * P.alpha[:3]))


@pytest.mark.parametrize("spec", ["nope:5", "random-ngon", "random-ngon:x", "random-ngon:2"])
def test_bad_generator_specs(spec):
    with pytest.raises(ValueError):
        generators.from_spec(spec, 0)


# -- io --------------------------------------------------------------------------


def test_polygon_json_round_trip(rng, tmp_path):
    P = random_polygon(rng, 5)
    path = tmp_path / "p.json"
    path.write_text(io.dumps(io.polygon_to_dict(P)))
    Q = io.read_polygon(path)
    assert np.array_equal(P.alpha, Q.alpha) and np.array_equal(P.p, Q.p)
    assert set(json.loads(path.read_text())) == {"lines"}


def test_polygon_csv_round_trip(rng, tmp_path):
    P = random_polygon(rng, 6)
    path = tmp_path / "p.csv"
    io.write_polygon_csv(path, P, seed=11)
    assert path.read_text().startswith("# seed=11")
    Q = io.read_polygon(path)
    assert np.array_equal(P.alpha, Q.alpha) and np.array_equal(P.p, Q.p)


def test_vertex_inputs(tmp_path):
    V = [[0, 0], [1, 0], [0, 1]]
    P = io.polygon_from_dict({"vertices": V})
    assert np.allclose(P.vertices(), V)
    path = tmp_path / "v.csv"
    path.write_text("x,y\n0,0\n1,0\n0,1\n")
    assert np.allclose(io.read_polygon(path).vertices(), V)
    with pytest.raises(ValueError):
        io.polygon_from_dict({"foo": 1})


def test_fmt_round_trips():
    x = 0.1 + 0.2
    assert float(io.fmt(x)) == x


def test_trace_outputs(tmp_path):
    P = generators.from_spec("random-ngon:5", 3)
    tr = iterate("p_evolute", P, 4)
    io.write_trace_csv(tmp_path / "t.csv", tr, seed=3)
    io.write_trace_jsonl(tmp_path / "t.jsonl", tr, seed=3)
    rows = (tmp_path / "t.csv").read_text().splitlines()
    assert rows[0].startswith("# seed=3") and len(rows) == 2 + 5 * 5
    lines = (tmp_path / "t.jsonl").read_text().splitlines()
    assert json.loads(lines[0])["seed"] == 3 and len(lines) == 6


def test_support_poly_round_trip():
    from evolab.smooth import SupportPoly

    s = SupportPoly(2, {1: (0.5, -0.25), 3: (1.0, 0.0)})
    assert io.support_poly_from_dict(json.loads(io.dumps(io.support_poly_to_dict(s)))) == s


# -- svg -------------------------------------------------------------------------


def test_svg_single_triangle():
    P = Polygon.from_vertices([[0, 0], [1, 0], [0, 1]])
    root = ET.fromstring(render_svg([P], markers=True))
    paths = root.findall(f".//{NS}path")
    assert len(paths) == 1
    assert paths[0].get("d").count("L") == 2 and paths[0].get("d").endswith("Z")
    assert len(root.findall(f".//{NS}circle")) == 3


def test_svg_deterministic_and_styled():
    P = harmonic_polygon(9, 2)
    a = render_svg([P, p_evolute_transform(P)], arrows=True)
    b = render_svg([P, p_evolute_transform(P)], arrows=True)
    assert a == b
    paths = ET.fromstring(a).findall(f".//{NS}path")
    assert len(paths) == 2
    assert paths[0].get("stroke") != paths[1].get("stroke")
    assert paths[1].get("stroke-dasharray") and not paths[0].get("stroke-dasharray")


def test_svg_viewbox_margin():
    P = Polygon.from_vertices([[0, 0], [2, 0], [2, 1], [0, 1]])
    x, y, w, h = map(float, ET.fromstring(render_svg([P])).get("viewBox").split())
    assert math.isclose(w, 2.2) and math.isclose(h, 1.1)
    assert math.isclose(x, -0.1)


def test_svg_empty():
    with pytest.raises(EmptyInput):
        render_svg([])


# -- cli -------------------------------------------------------------------------


def test_cli_run_writes_artifacts(tmp_path, capsys):
    out = {k: str(tmp_path / f"t.{k}") for k in ("csv", "jsonl", "svg")}
    args = ["run", "--gen", "random-ngon:6", "--seed", "7", "--steps", "50"]
    for k, v in out.items():
        args += [f"--{k}", v]
    assert cli.main(args) == cli.EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["seed"] == 7 and summary["steps_done"] == 50
    assert summary["classification"] in ("real-pair", "imaginary-pair", "complex-quadruple", "nongeneric")
    first = {k: open(v).read() for k, v in out.items()}
    assert cli.main(args) == cli.EXIT_OK
    assert {k: open(v).read() for k, v in out.items()} == first


def test_cli_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"name": "demo", "gen": "random-ngon:5", "seed": 1, "transform": "a_o_evolute",
                               "steps": 10}))
    assert cli.main(["run", "--config", str(cfg)]) == cli.EXIT_OK
    assert json.loads(capsys.readouterr().out)["name"] == "demo"
    cfg.write_text(json.dumps({"gen": "random-ngon:5", "bogus": 1}))
    assert cli.main(["run", "--config", str(cfg)]) == cli.EXIT_USAGE


def test_cli_event_exit(capsys):
    # odd polygons with nonzero quasiperimeter have no P-evolvent
    assert cli.main(["run", "--gen", "random-ngon:5", "--transform", "p_evolvent", "--steps", "3"]) == cli.EXIT_EVENT
    assert json.loads(capsys.readouterr().out)["event"] == "NoEvolvent"


def test_cli_usage_errors(capsys):
    assert cli.main(["run", "--gen", "nope:5"]) == cli.EXIT_USAGE
    assert cli.main(["run"]) == cli.EXIT_USAGE
    assert cli.main(["verify", "no-such-check"]) == cli.EXIT_USAGE
    assert cli.main(["frobnicate"]) == cli.EXIT_USAGE


def test_cli_verify(capsys):
    assert cli.main(["verify", "grunbaum-pentagon", "--trials", "10"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.split()[:2] == ["PASS", "4"]


def test_cli_verify_failure_exit(capsys):
    # an impossible tolerance turns the check red
    assert cli.main(["verify", "1", "--tol", "0"]) == cli.EXIT_FAIL
    assert capsys.readouterr().out.split()[:2] == ["FAIL", "1"]


def test_cli_transform_and_family(tmp_path, capsys):
    P = generators.from_spec("random-ngon:4", 2)
    path = tmp_path / "q.json"
    path.write_text(io.dumps(io.polygon_to_dict(P)))
    assert cli.main(["transform", "--input", str(path), "--transform", "p_evolute"]) == cli.EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert np.allclose([l["p"] for l in out["output"]["lines"]], p_evolute_transform(P).p)
    assert cli.main(["transform", "--gen", "random-ngon:6", "--transform", "p_involute_family"]) == cli.EXIT_OK
    fam = json.loads(capsys.readouterr().out)["family"]
    assert fam["kind"] == "unique" and fam["evolvent"] is not None
    assert cli.main(["transform", "--gen", "random-ngon:6", "--transform", "a_involute_family"]) == cli.EXIT_EVENT


def test_cli_render(tmp_path, capsys):
    svg = tmp_path / "r.svg"
    assert cli.main(["render", "--gen", "equiangular:9", "--overlay", "p_evolute", "--svg", str(svg)]) == 0
    assert len(ET.parse(svg).getroot().findall(f".//{NS}path")) == 2
