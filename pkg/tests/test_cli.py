"""CLI contract: exit codes, JSON schema, deterministic output."""

import json
from pathlib import Path

import jsonschema
from click.testing import CliRunner

from horocycle.cli import main

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report_schema.json").read_text())


def invoke(args):
    return CliRunner().invoke(main, args)


def test_verify_identities_passes():
    result = invoke(["verify", "identities", "--quiet"])
    assert result.exit_code == 0
    assert "overall: PASS" in result.output


def test_verify_unknown_suite_is_usage_error():
    result = invoke(["verify", "bogus"])
    assert result.exit_code == 2


def test_verify_negative_bound_is_usage_error():
    result = invoke(["verify", "identities", "--bound", "-3"])
    assert result.exit_code == 2


def test_exponents_command():
    result = invoke(["exponents", "--m", "2"])
    assert result.exit_code == 0
    assert "[['-2', 0]]" in result.output
    assert "[-2, 0, 2]" in result.output


def test_exponents_rejects_negative_m():
    result = invoke(["exponents", "--m", "-1"])
    assert result.exit_code == 2


def test_localize_examples():
    result = invoke(["localize", "--rep", "1,1", "--point", "1,0,0,1", "--quiet"])
    assert result.exit_code == 0
    assert "dimension: 1" in result.output
    result = invoke(["localize", "--rep", "1,0", "--point", "1,0,0,1", "--quiet"])
    assert "dimension: 0" in result.output
    result = invoke(["localize", "--rep", "0,0", "--point", "2,0,0,1/2", "--quiet"])
    assert "dimension: 1" in result.output


def test_localize_off_variety_is_usage_error():
    result = invoke(["localize", "--rep", "1,1", "--point", "1,2,3,4"])
    assert result.exit_code == 2
    result = invoke(["localize", "--rep", "1,1", "--point", "0,0,0,0"])
    assert result.exit_code == 2
    result = invoke(["localize", "--rep", "x,y", "--point", "1,0,0,1"])
    assert result.exit_code == 2


def test_json_report_schema_and_determinism(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    r1 = invoke(["verify", "identities", "--quiet", "--json", str(out1)])
    r2 = invoke(["verify", "identities", "--quiet", "--json", str(out2)])
    assert r1.exit_code == 0 and r2.exit_code == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert r1.stdout == r2.stdout  # timing goes to stderr only
    payload = json.loads(out1.read_text())
    jsonschema.validate(payload, SCHEMA)
    assert payload["pass"] is True
    assert payload["checks"][0]["check"] == "identities"


def test_exponents_json(tmp_path):
    out = tmp_path / "e.json"
    result = invoke(["exponents", "--m", "3", "--json", str(out)])
    assert result.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload["m"] == 3
    assert payload["coinvariant_exponents"] == [["-3", 0]]
    assert payload["oracle_exponents"] == [-3, -1, 1, 3]
    assert payload["leading"] == -3
    assert payload["pass"] is True


def test_localize_json(tmp_path):
    out = tmp_path / "l.json"
    result = invoke(["localize", "--rep", "2,2", "--point", "1,0,0,1", "--json", str(out)])
    assert result.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["dim"] == 1
    assert payload["chart"] == "det=1"
    assert len(payload["stabilizer"]) == 3


def test_bound_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("HOROCYCLE_BOUND", "4")
    result = invoke(["verify", "vfilt", "--quiet"])
    assert result.exit_code == 0
