import json

import pytest

from thetaspan import io
from thetaspan.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_m7(capsys):
    code, out, _ = run(capsys, "bounds", "--m", 7)
    assert code == 0
    _, rows = io.from_csv(out)
    assert rows[0]["ub_span"] == pytest.approx(3.5132, abs=5e-4)
    assert rows[0]["legacy_rs"] == pytest.approx(7.5625, abs=5e-4)


def test_bounds_range_and_legacy(capsys):
    code, out, _ = run(capsys, "bounds", "--m-range", "6..30")
    cols, rows = io.from_csv(out)
    assert code == 0 and [r["m"] for r in rows] == list(range(6, 31))
    assert io.to_csv(rows, cols) == out
    _, legacy, _ = run(capsys, "bounds", "--m", 7, "--legacy-table", "--format", "json")
    assert json.loads(legacy)[0]["ub_route"] != rows[1]["ub_route"]
    code, _, err = run(capsys, "bounds", "--m", 5)
    assert code == 2 and json.loads(err)["error"] == "FamilyError"
    code, _, _ = run(capsys, "bounds")
    assert code == 2


def test_verify_order(capsys):
    code, out, _ = run(capsys, "verify-order", "--kmax", 1000)
    assert code == 0 and out.splitlines()[0] == "9/9 inequality families hold"


def test_gen_then_spanning(tmp_path, capsys):
    pts = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", "--family", "4k+2", "--k", 1, "--epsilon", 1e-5, "-o", pts)
    assert code == 0
    meta = json.loads(io.metadata_path(pts).read_text())
    assert meta["kind"] == "spanning" and meta["intended_ratio"] == 2.0
    code, out, _ = run(capsys, "spanning", "-i", pts, "--m", 6)
    assert code == 0 and json.loads(out)["max_ratio"] == pytest.approx(2.0, abs=1e-3)


def test_build_deterministic_across_threads(tmp_path, capsys, monkeypatch):
    pts = tmp_path / "g.json"
    run(capsys, "gen", "--family", "4k+4", "--cycles", 6, "-o", pts)
    outs = []
    for t in ("1", "4"):
        monkeypatch.setenv("THETASPAN_THREADS", t)
        code, out, _ = run(capsys, "build", "-i", pts, "--m", 8)
        assert code == 0
        outs.append(out)
        code, rep, _ = run(capsys, "spanning", "-i", pts, "--m", 8, "--format", "csv")
        outs.append(rep)
    assert outs[0] == outs[2] and outs[1] == outs[3]
    g = tmp_path / "graph.json"
    g.write_text(outs[0])
    code, out, _ = run(capsys, "route", "-i", g, "--source", 0, "--target", 1)
    assert code == 0 and json.loads(out)["status"] == "arrived"


def test_route_reports(tmp_path, capsys):
    pts = tmp_path / "r.json"
    assert run(capsys, "random", "--n", 30, "--seed", 4, "-o", pts)[0] == 0
    code, out, _ = run(capsys, "route", "-i", pts, "--m", 9, "--format", "csv", "--threads", 2)
    cols, rows = io.from_csv(out)
    assert code == 0 and tuple(cols) == io.ROUTING_COLUMNS and len(rows) == 30 * 29
    assert io.to_csv(rows, cols) == out
    code, out, _ = run(capsys, "route", "-i", pts, "--m", 9, "--pairs", 50, "--seed", 1)
    assert json.loads(out)["n_pairs"] == 50


def test_random_is_seeded(capsys):
    a = run(capsys, "random", "--n", 5, "--seed", 9)[1]
    b = run(capsys, "random", "--n", 5, "--seed", 9)[1]
    c = run(capsys, "random", "--n", 5, "--seed", 10)[1]
    assert a == b != c


def test_error_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0, 0],')
    code, _, err = run(capsys, "build", "-i", bad, "--m", 6)
    assert code == 1 and json.loads(err)["offset"] == 19
    code, _, _ = run(capsys, "build", "-i", tmp_path / "missing.json", "--m", 6)
    assert code == 1
    col = tmp_path / "col.json"
    col.write_text('{"points": [[0, 0], [1, 0.5], [2, 1]]}')
    code, _, err = run(capsys, "build", "-i", col, "--m", 7)
    doc = json.loads(err)
    assert code == 2 and doc["error"] == "GeneralPositionError"
    assert any(v["kind"] == "collinear" for v in doc["violations"])
    code, out, _ = run(capsys, "build", "-i", col, "--m", 7, "--waive")
    assert code == 0
    code, _, _ = run(capsys, "gen", "--family", "4k+4", "--cycles", 40)
    assert code == 3
    code, _, _ = run(capsys, "gen", "--family", "4k+2", "--epsilon", 0.5)
    assert code == 2
    code, _, _ = run(capsys, "spanning", "-i", col, "--m", 7, "--waive", "--threads", 0)
    assert code == 2
