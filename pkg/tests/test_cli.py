import json

import pytest
from click.testing import CliRunner

from k3char2 import cli, data


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli.main, list(args))

    return invoke


def report(result):
    return json.loads(result.stdout)


def test_help_lists_commands(run):
    res = run("--help")
    assert res.exit_code == 0
    for cmd in ("verify-codes", "verify-family", "centers", "correspondences", "groups", "ns-action", "report-all"):
        assert cmd in res.stdout


def test_verify_codes_dk(run):
    res = run("verify-codes", "--code", "DK")
    assert res.exit_code == 0
    out = report(res)
    assert out["passed"] and out["results"]["DK"]["dim"] == 10
    assert "[PASS] verify-codes" in res.stderr


def test_corrupted_golden_value_fails(run, monkeypatch):
    real = data.load_json

    def fake(path):
        out = real(path)
        if path == "codes/expected.json":
            out = json.loads(json.dumps(out))
            out["DK"]["enumerator"] = "1+z^21"
        return out

    monkeypatch.setattr(data, "load_json", fake)
    res = run("verify-codes", "--code", "DK")
    assert res.exit_code == 1
    assert report(res)["passed"] is False
    assert "[FAIL]" in res.stderr


def test_verify_family_dk(run):
    res = run("verify-family", "DK")
    assert res.exit_code == 0
    assert report(res)["results"]["zero_scheme"]["verified"]


def test_verify_family_specialized(run):
    res = run("verify-family", "B", "--at", "0x57")
    assert res.exit_code == 0
    assert report(res)["results"]["specialization"]["code_matches"]


def test_centers(run):
    res = run("centers", "B")
    assert res.exit_code == 0
    assert report(res)["results"]["centers"] == 1374


def test_ns_action(run):
    res = run("ns-action", "1,4,6,9,12,20")
    assert res.exit_code == 0
    out = report(res)["results"]
    assert out["preserves_gram"] and len(out["matrix"]) == 22


def test_ns_action_bad_center(run):
    res = run("ns-action", "1,2,3")
    assert res.exit_code == 1
    assert report(res)["results"]["error"] == "BAD_WEIGHT"


def test_relations_and_out_file(run, tmp_path):
    out = tmp_path / "rel.json"
    res = run("--out", str(out), "correspondences", "--relations")
    assert res.exit_code == 0
    assert res.stdout == ""
    body = json.loads(out.read_text())
    rel = body["results"]["relations"]
    assert rel["matched"] == rel["total"] == 86 and rel["closed"]


def test_field_degree_validation(run):
    assert run("--field-degree", "5", "centers", "A").exit_code == 2
    assert run("--field-degree", "2", "centers", "A").exit_code == 2


def test_reports_are_deterministic(run, tmp_path):
    a = run("--cache", str(tmp_path), "verify-codes", "--code", "A")
    b = run("--cache", str(tmp_path), "verify-codes", "--code", "A")
    assert a.exit_code == b.exit_code == 0
    assert a.stdout == b.stdout
    assert any(tmp_path.iterdir())


def test_cache_round_trip(tmp_path):
    cache = cli.Cache(str(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return {"x": [1, 2]}

    assert cache.get_or_compute("k", compute) == {"x": [1, 2]}
    assert cache.get_or_compute("k", compute) == {"x": [1, 2]}
    assert len(calls) == 1
