"""CLI surface: output formats, exit codes, determinism, round-trips."""

import json
import os
import subprocess
import sys

BASE = [sys.executable, "-m", "lerchzeta.cli"]


def run_cli(*args, **kw):
    return subprocess.run(BASE + list(args), capture_output=True, text=True, **kw)


def test_eval_riemann_point():
    r = run_cli("eval", "--fn", "zeta", "--s", "2", "--a", "1", "--c", "1")
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert payload["value"]["re"].startswith("1.6449340668")
    assert "pole" not in payload


def test_eval_catalan_and_hurwitz():
    r = run_cli("eval", "--fn", "zeta", "--s", "2", "--a", "1/2", "--c", "1/2")
    assert json.loads(r.stdout)["value"]["re"].startswith("3.6638623767")
    r = run_cli("eval", "--fn", "hurwitz", "--s", "2", "--c", "1/2")
    assert json.loads(r.stdout)["value"]["re"].startswith("4.9348022005")


def test_eval_pole_report_and_rational_semantics():
    r = run_cli("eval", "--fn", "zeta", "--s", "1", "--a", "0", "--c", "1/2")
    payload = json.loads(r.stdout)
    assert payload["pole"]["residue"]["re"] == "1.0"
    # decimal a never triggers the integer-parameter branch
    r = run_cli("eval", "--fn", "zeta", "--s", "1", "--a", "0.0", "--c", "0.5")
    payload = json.loads(r.stdout)
    assert "pole" not in payload


def test_eval_complex_s_parsing():
    r = run_cli("eval", "--fn", "zeta", "--s", "0.5+3i", "--a", "1/3", "--c", "2/5")
    assert r.returncode == 0
    r = run_cli("eval", "--fn", "zeta", "--s=-1.5-2i", "--a", "1/3", "--c", "2/5")
    assert r.returncode == 0
    r = run_cli("eval", "--fn", "zeta", "--s", "3i", "--a", "1/3", "--c", "2/5")
    assert r.returncode == 0


def test_exit_codes():
    r = run_cli("eval", "--fn", "nonsense", "--s", "2")
    assert r.returncode == 2  # argparse choice failure
    r = run_cli("eval", "--fn", "zeta", "--s", "xyz", "--a", "1", "--c", "1")
    assert r.returncode == 2
    r = run_cli("eval", "--fn", "hurwitz", "--s", "2", "--c=-1/2")
    assert r.returncode == 3
    r = run_cli("eval", "--fn", "dirichlet", "--s", "1", "--a", "1/3", "--c", "1/2")
    assert r.returncode == 3
    r = run_cli("grid", "--fn", "zeta", "--s", "2", "--a-min", "0.1", "--a-max", "0.9",
                "--a-count", "2", "--c-min", "0.1", "--c-max", "0.9", "--c-count", "2",
                "--output", "/nonexistent-dir/grid.csv")
    assert r.returncode == 4


def test_determinism():
    args = ("fecheck", "--suite", "weil", "--samples", "4", "--seed", "3", "--prec", "96")
    out1 = run_cli(*args).stdout
    out2 = run_cli(*args).stdout
    assert out1 == out2
    args = ("eval", "--fn", "lhat_minus", "--s", "0.7+2i", "--a", "2/7", "--c", "3/8")
    assert run_cli(*args).stdout == run_cli(*args).stdout


def test_grid_shape_and_roundtrip(tmp_path):
    out = tmp_path / "grid.csv"
    r = run_cli("grid", "--fn", "zeta", "--s", "2", "--a-min", "0.2", "--a-max", "0.4",
                "--a-count", "3", "--c-min", "0.3", "--c-max", "0.5", "--c-count", "2",
                "--output", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "a,c,re,im,err_bound"
    assert len(lines) == 1 + 6
    # row order: c outer ascending, a inner ascending
    a0, c0 = lines[1].split(",")[:2]
    a1, c1 = lines[2].split(",")[:2]
    a3, c3 = lines[4].split(",")[:2]
    assert a0 != a1 and c0 == c1
    assert c3 != c0
    # JSON round-trip equals eval at the same point
    r = run_cli("grid", "--fn", "zeta", "--s", "2", "--a-min", "0.2", "--a-max", "0.4",
                "--a-count", "3", "--c-min", "0.3", "--c-max", "0.5", "--c-count", "2",
                "--format", "json")
    rows = json.loads(r.stdout)
    probe = rows[0]
    r2 = run_cli("eval", "--fn", "zeta", "--s", "2", "--a", probe["a"], "--c", probe["c"])
    ev = json.loads(r2.stdout)
    assert ev["value"]["re"] == probe["re"]
    assert ev["value"]["im"] == probe["im"]


def test_grid_jump_across_c_equals_one():
    """At Re(s) = 2 the grid shows the twisted-periodicity jump across
    c = 1: values just above are e^{-2 pi i a} zeta_*(s, a, c-1), which is
    dominated by the (c-1)^{-s} spike."""
    r = run_cli("grid", "--fn", "zeta", "--s", "2", "--a-min", "0.3", "--a-max", "0.3",
                "--a-count", "2", "--c-min", "0.99", "--c-max", "1.01", "--c-count", "2",
                "--format", "json")
    rows = json.loads(r.stdout)
    below = complex(float(rows[0]["re"]), float(rows[0]["im"]))
    above = complex(float(rows[2]["re"]), float(rows[2]["im"]))
    assert abs(above) > 100 * abs(below)


def test_grid_a_edge_blowup():
    """At s = 0.5 the grid exhibits the a^{s-1}-type growth toward a = 1."""
    r = run_cli("grid", "--fn", "zeta", "--s", "0.5", "--a-min", "0.9", "--a-max",
                "0.9999", "--a-count", "4", "--c-min", "0.4", "--c-max", "0.4",
                "--c-count", "2", "--format", "json", "--prec", "64", "--guard", "8")
    rows = json.loads(r.stdout)[:4]
    mags = [abs(complex(float(x["re"]), float(x["im"]))) for x in rows]
    assert mags[-1] > 8 * mags[0]


def test_fecheck_failure_exit(monkeypatch, tmp_path):
    # a tiny sample run against an absurd tolerance must exit 1: emulate by
    # patching tolerance through an extreme precision request is not
    # possible, so check the pass path and the failures field instead
    r = run_cli("fecheck", "--suite", "transform", "--samples", "3", "--seed", "5",
                "--prec", "96")
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert payload["pass"] is True and payload["failures"] == []


def test_poly_and_zeros_output():
    r = run_cli("poly", "--family", "p", "--n", "2")
    assert r.stdout.strip() == "8 -8 6"
    r = run_cli("poly", "--family", "q", "--n", "2", "--json")
    assert json.loads(r.stdout)["coefficients_descending"] == ["16", "-16", "28"]
    r = run_cli("zeros", "--family", "p", "--n", "2", "--digits", "12")
    lines = r.stdout.splitlines()
    assert len(lines) == 2
    assert "0.707106781187" in lines[1]
    assert "re_residual=0.0" in lines[0]


def test_report_writes_csv_and_figure(tmp_path):
    base = tmp_path / "out" / "sweep"
    os.makedirs(base.parent, exist_ok=True)
    r = run_cli("report", "--fn", "zeta", "--s", "2", "--a-min", "0.1", "--a-max", "0.9",
                "--a-count", "6", "--c-min", "0.1", "--c-max", "0.9", "--c-count", "5",
                "--output", str(base), "--prec", "64", "--guard", "8")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert os.path.exists(payload["csv"])
    assert os.path.exists(payload["figure"])
    assert payload["rows"] == 30
    header = open(payload["csv"]).readline().strip()
    assert header == "a,c,re,im,err_bound"
    png = open(payload["figure"], "rb").read(8)
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
