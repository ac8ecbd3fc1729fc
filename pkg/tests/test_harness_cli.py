import json
import subprocess
import sys

import pytest

from inertia_lab import cli
from inertia_lab.errors import SizeLimit
from inertia_lab.harness import (
    SCHEMA, campaign_instances, conjecture_scan, property_suite, verify_campaign,
)


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- campaigns -------------------------------------------------------------

def test_tree_campaign():
    r = verify_campaign("tree", 3, 8)
    assert r.instance_count == 1 + 2 + 3 + 6 + 11 + 23 == len(r.records)
    assert r.ok and r.mismatches == []


def test_cycle_campaign():
    assert verify_campaign("cycle", 3, 20).ok


def test_even_cycle_tree_campaign():
    r = verify_campaign("evencycle-tree", 4, 10, tree_max=5)
    assert r.ok and r.instance_count > 0


def test_campaign_records():
    r = verify_campaign("saturated", 4, 6)
    rec = r.records[0]
    assert rec["boundary"] and rec["index"] == 0
    assert sum(rec["oracle"].values()) == rec["stats"]["n"]
    assert len(rec["graph_hash"]) == 16
    doc = r.to_json()
    assert doc["schema"] == SCHEMA and doc["boundary"] == [0] and doc["mismatches"] == []


def test_campaign_is_deterministic_and_order_stable():
    a = verify_campaign("triangle-tree", 1, 4).records
    b = verify_campaign("triangle-tree", 1, 4, jobs=2).records
    assert a == b


def test_campaign_size_cap(monkeypatch):
    with pytest.raises(SizeLimit):
        verify_campaign("cycle", 3, 30)
    monkeypatch.setenv("INERTIA_LAB_MAX_N", "30")
    assert verify_campaign("cycle", 29, 30).ok


def test_unknown_family():
    with pytest.raises(ValueError):
        campaign_instances("hexagon", 1, 2)


# --- scanner ---------------------------------------------------------------

def test_scan_deterministic():
    a = [json.dumps(r) for r in conjecture_scan(100, 10, 7)]
    b = [json.dumps(r) for r in conjecture_scan(100, 10, 7, jobs=2)]
    assert a == b
    assert json.loads(a[0])["type"] == "header" and json.loads(a[-1])["type"] == "summary"


def test_scan_records():
    lines = list(conjecture_scan(200, 9, 3))
    samples = [r for r in lines if r["type"] == "sample"]
    assert len(samples) == 200
    for r in samples:
        assert r["in_bounds"] == (r["lo"] <= r["i_minus"] <= r["hi"])
        if r["n"] == 3:
            assert r["i_minus"] == 2 and r["in_bounds"]
    probe = next(r for r in lines if r["type"] == "probe")
    assert probe["family"] == "pendants:6x3" and probe["i_minus"] == probe["leaves"] == probe["lo"]
    summary = lines[-1]
    assert summary["out_of_bounds"] == sum(not r["in_bounds"] for r in samples)
    assert summary["out_of_bounds_indices"] == [r["index"] for r in samples if not r["in_bounds"]]


def test_scan_cap():
    with pytest.raises(SizeLimit):
        list(conjecture_scan(1, 30, 0))


# --- properties ------------------------------------------------------------

def test_property_suite():
    r = property_suite(11, 40, tree_max=7)
    assert r["ok"]
    assert set(r["checks"]) >= {"sylvester", "haynsworth", "interlacing", "subadditivity"}
    assert r["checks"]["sylvester"]["trials"] == 40


# --- CLI -------------------------------------------------------------------

def test_cli_gen_inertia_pipeline():
    gen = subprocess.run([sys.executable, "-m", "inertia_lab", "gen", "--family", "cycle:5"],
                         capture_output=True, text=True, check=True)
    out = subprocess.run([sys.executable, "-m", "inertia_lab", "inertia", "--method", "exact"],
                         input=gen.stdout, capture_output=True, text=True, check=True)
    assert json.loads(out.stdout) == {"i_plus": 3, "i_minus": 2, "i_zero": 0}


def test_cli_inertia_numeric(tmp_path, capsys):
    f = tmp_path / "g.json"
    assert cli.main(["gen", "--family", "path:4", "--out", str(f)]) == 0
    assert cli.main(["inertia", str(f), "--method", "numeric"]) == 0
    assert json.loads(capsys.readouterr().out) == {"i_plus": 1, "i_minus": 2, "i_zero": 1}


def test_cli_predict_star(tmp_path, capsys):
    f = tmp_path / "g.json"
    cli.main(["gen", "--family", "star:5", "--out", str(f)])
    assert cli.main(["predict", str(f)]) == 0
    assert json.loads(capsys.readouterr().out)["i_minus"] == 4


def test_cli_predict_unsupported(tmp_path, capsys):
    # 5-cycle with a two-edge path: odd cycle with attachments has no formula
    f = tmp_path / "g.json"
    edges = [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4], [0, 5], [5, 6]]
    f.write_text(json.dumps({"n": 7, "edges": edges}))
    assert cli.main(["predict", str(f)]) == 0
    assert "unsupported" in json.loads(capsys.readouterr().out)


def test_cli_witness_opposite(capsys):
    code, out, err = run(capsys, "witness", "--kind", "opposite", "--args", "k=3")
    assert code == 0 and "verified: Δv = 0" in err
    assert json.loads(out)["status"] == "verified: Δv = 0"


def test_cli_witness_pair(tmp_path, capsys):
    f = tmp_path / "g.json"
    cli.main(["gen", "--family", "path:5", "--out", str(f)])
    code, out, _ = run(capsys, "witness", str(f), "--kind", "pair", "--args", "v1=1", "v2=3")
    assert code == 0 and json.loads(out)["verified"]


def test_cli_witness_usage(tmp_path, capsys):
    assert run(capsys, "witness", "--kind", "opposite")[0] == 2
    assert run(capsys, "witness", str(tmp_path / "missing.json"), "--kind", "row", "--args", "v=1")[0] == 2
    assert run(capsys, "witness", "--kind", "opposite", "--args", "k=1")[0] == 2


def test_cli_delta_and_spectrum(tmp_path, capsys):
    f = tmp_path / "g.json"
    cli.main(["gen", "--family", "path:3", "--out", str(f)])
    code, out, _ = run(capsys, "delta", str(f))
    m = tmp_path / "m.json"
    m.write_text(out)
    assert json.loads(out) == {"n": 3, "data": [[0, 1, 4], [1, 0, 1], [4, 1, 0]]}
    code, out, _ = run(capsys, "spectrum", str(m), "--tol", "1e-9")
    spec = json.loads(out)
    assert code == 0 and spec["inertia"] == {"i_plus": 1, "i_minus": 2, "i_zero": 0}


def test_cli_verify(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--family", "cycle", "--range", "3..9", "--out", str(out))
    assert code == 0 and "0 mismatches" in err
    assert json.loads(out.read_text())["instance_count"] == 7


def test_cli_verify_mismatch_exit(monkeypatch, capsys):
    from inertia_lab import harness
    real = harness.check_instance

    def broken(item):
        rec = real(item)
        rec["match"] = False
        return rec

    monkeypatch.setattr(harness, "check_instance", broken)
    assert run(capsys, "verify", "--family", "cycle", "--range", "3..4")[0] == 1


def test_cli_scan_bytes_identical(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for f in (a, b):
        assert cli.main(["scan", "--samples", "100", "--max-n", "10", "--seed", "7", "--out", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert all(json.loads(line) for line in a.read_text().splitlines())


def test_cli_props(capsys):
    code, out, _ = run(capsys, "props", "--seed", "2", "--trials", "10")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["gen"], ["gen", "--family", "cycle:2"], ["verify", "--family", "cycle", "--range", "9..3"],
    ["verify", "--family", "cycle", "--range", "3..50"], ["inertia", "/nonexistent.json"],
])
def test_cli_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_cli_bad_json(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert cli.main(["inertia", str(f)]) == 2
