import csv
import io
import json

import pytest

from stairpoly import brute, cli
from stairpoly.lattice import PolygonClass


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("cls", ["S", "G"])
def test_enumerate_half_length_two(capsys, cls):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--class", cls)
    assert code == 0
    doc = json.loads(out)
    assert doc["terms"] == [{"v": 1, "h": 2, "count": "1"}]
    assert doc["total"] == "1" and doc["class"] == cls


def test_enumerate_empty(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "1", "--class", "S")
    assert code == 0 and json.loads(out)["terms"] == []


def test_enumerate_matches_oracle_and_round_trips(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "6", "--class", "GC")
    assert code == 0
    doc = json.loads(out)
    poly = cli.document_polynomial(doc)
    assert poly == brute.enumerate_polygons(6, PolygonClass.GC)
    keys = [(t["v"], t["h"]) for t in doc["terms"]]
    assert keys == sorted(keys)
    assert all(isinstance(t["count"], str) for t in doc["terms"])
    again = cli.dumps(cli.polynomial_document(6, PolygonClass.GC, poly))
    assert again == out


def test_enumerate_cap(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "40", "--class", "S")
    assert code == 1 and "error" in err


def test_output_is_byte_identical(capsys):
    args = ("phase-grid", "--kind", "Grafted", "--a-range", "0.5,4,4,log", "--y-range", "0.5,3,3", "--n", "12")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_phase_grid_columns_and_order(capsys):
    code, out, _ = run(capsys, "phase-grid", "--kind", "Grafted", "--a-range", "1,2,2", "--y-range", "0.5,1,2", "--n", "10")
    assert code == 0
    table = rows(out)
    assert list(table[0]) == cli.PHASE_COLUMNS
    assert [(r["a"], r["y"]) for r in table] == [("1", "0.5"), ("1", "1"), ("2", "0.5"), ("2", "1")]
    assert table[0]["phase"] == "Free" and float(table[0]["V"]) == 0 and float(table[0]["H"]) == 0
    assert table[3]["phase"] == "Boundary"


@pytest.mark.parametrize("kind", ["PathP", "Grafted", "Centred"])
def test_free_point_for_every_kind(capsys, kind):
    _, out, _ = run(capsys, "phase-grid", "--kind", kind, "--a-range", "1,1.5,2", "--y-range", "0.5,0.6,2", "--n", "8")
    assert rows(out)[0]["phase"] == "Free"


def test_phase_grid_centred_mixed(capsys):
    _, out, _ = run(capsys, "phase-grid", "--kind", "Centred", "--a-range", "3,4,2", "--y-range", "2,3,2", "--n", "8")
    phases = {(r["a"], r["y"]): r["phase"] for r in rows(out)}
    assert phases[("3", "2")] == "Boundary"  # on a = y + 1
    assert phases[("4", "2")] == "Mixed"


def test_phase_grid_json(capsys):
    _, out, _ = run(capsys, "phase-grid", "--format", "json", "--grid", "2", "--n", "6")
    doc = json.loads(out)
    assert len(doc["rows"]) == 4 and doc["half_length"] == 6


@pytest.mark.parametrize("bad", ["1,2", "0,2,3", "2,1,3", "1,2,1", "1,2,3,cubic", "a,b,c"])
def test_bad_ranges_are_usage_errors(capsys, bad):
    code, _, err = run(capsys, "phase-grid", "--a-range", bad)
    assert code == 2 and "usage error" in err


def test_other_usage_errors(capsys):
    assert run(capsys, "enumerate", "--class", "S")[0] == 2
    assert run(capsys, "enumerate", "--n", "2", "--class", "Q")[0] == 2
    assert run(capsys, "partition", "--n", "4", "--class", "G", "--a", "-1")[0] == 2
    assert run(capsys, "asymptotics-report", "--parity", "5")[0] == 2
    assert run(capsys, "verify", "nope")[0] == 2


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# sweep\nkind = Centred\na-range = 1,2,2\ny_range = 0.5,1,2\nn = 8\n")
    _, out, _ = run(capsys, "phase-grid", "--config", str(cfg))
    assert len(rows(out)) == 4
    _, out, _ = run(capsys, "phase-grid", "--config", str(cfg), "--grid", "3")
    assert len(rows(out)) == 9
    _, js, _ = run(capsys, "phase-grid", "--config", str(cfg), "--format", "json")
    assert json.loads(js)["kind"] == "Centred"
    _, js, _ = run(capsys, "phase-grid", "--config", str(cfg), "--format", "json", "--kind", "Grafted")
    assert json.loads(js)["kind"] == "Grafted"


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "phase-grid", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_partition_exact_and_float(capsys):
    code, out, _ = run(capsys, "partition", "--n", "6", "--class", "G", "--a", "1", "--y", "1")
    total = brute.enumerate_polygons(6, PolygonClass.G).total()
    assert code == 0 and json.loads(out)["value"] == str(total)
    _, out2, _ = run(capsys, "partition", "--n", "6", "--class", "G", "--a", "1", "--y", "1", "--method", "transfer")
    assert json.loads(out2)["value"] == str(total)


def test_partition_writes_out(tmp_path, capsys):
    dest = tmp_path / "p.json"
    code, out, _ = run(capsys, "partition", "--n", "5", "--class", "BRIDGE", "--y", "2", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["target"] == "BRIDGE"


def test_verify_exit_codes(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "bounds", "--out", str(dest))
    assert code == 0 and "[PASS]" in out
    rep = json.loads(dest.read_text())
    assert rep["passed"] and rep["suite"] == "bounds"


def test_asymptotics_report(capsys):
    code, out, _ = run(capsys, "asymptotics-report", "--parity", "2")
    table = rows(out)
    assert code == 0
    assert {r["section"] for r in table} == {"exponent", "amplitude-ratio"}
    assert any(r["regime"] == "multicritical-G1" for r in table)
