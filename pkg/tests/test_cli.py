"""Command line interface: commands, formats, exit codes."""

from __future__ import annotations

import json

import pytest

from ictfx.workbench.cli import main
from ictfx.workbench.serialization import canonical_json

from conftest import SCENARIO_DIR

TELEPRESENCE = str(SCENARIO_DIR / "telepresence_case_study.json")
SMART_METER = str(SCENARIO_DIR / "smart_meter_volunteer.json")
NTT_2010 = str(SCENARIO_DIR / "ntt_2010.json")
EBOOK = str(SCENARIO_DIR / "ebook_model_average.json")


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# assess


def test_assess_human(capsys):
    code, out, err = run(capsys, "assess", TELEPRESENCE, "--seed", "42")
    assert code == 0
    assert err == ""
    assert "8,726,737.5" in out


def test_assess_machine(capsys):
    code, out, _ = run(
        capsys, "assess", TELEPRESENCE, "--seed", "42", "--format", "machine"
    )
    assert code == 0
    data = json.loads(out)
    assert data["result"]["effect_kg"] == 8_726_737.5
    assert data["provenance"]["seed"] == 42
    # Output is canonical JSON: re-serializing reproduces it byte for byte.
    assert out == canonical_json(data)


def test_assess_machine_is_deterministic(capsys):
    _, first, _ = run(capsys, "assess", TELEPRESENCE, "--seed", "9", "--format", "machine")
    _, second, _ = run(capsys, "assess", TELEPRESENCE, "--seed", "9", "--format", "machine")
    assert first == second


def test_assess_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "assess",
        TELEPRESENCE,
        "--seed",
        "42",
        "--format",
        "machine",
        "--out",
        str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["result"]["effect_kg"] == 8_726_737.5


def test_assess_missing_file(capsys):
    code, out, err = run(capsys, "assess", "no/such/file.json")
    assert code == 1
    assert out == ""
    assert "[unreadable-file]" in err


def test_assess_syntax_error(capsys, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "assess", str(bad))
    assert code == 1
    assert "[syntax-error]" in err


def test_assess_strict_rejects_unknown_fields(capsys, tmp_path):
    payload = json.loads((SCENARIO_DIR / "ebook_model_average.json").read_text())
    payload["scenario"]["x_note"] = "extra"
    extended = tmp_path / "extended.json"
    extended.write_text(json.dumps(payload))

    code, _, err = run(capsys, "assess", str(extended), "--seed", "1")
    assert code == 1
    assert "[unknown-field]" in err
    assert "scenario.x_note" in err

    code, out, err = run(capsys, "assess", str(extended), "--seed", "1", "--lenient")
    assert code == 0


# ---------------------------------------------------------------------------
# sensitivity


def test_sensitivity_tornado_machine(capsys):
    code, out, _ = run(
        capsys, "sensitivity", TELEPRESENCE, "--mode", "tornado", "--format", "machine"
    )
    assert code == 0
    data = json.loads(out)
    assert data["mode"] == "tornado"
    assert [row["target"] for row in data["rows"]] == [
        "rebound_model.usage_total",
        "rebound_share",
        "coefficient.k",
    ]


def test_sensitivity_montecarlo_seeded(capsys):
    args = (
        "sensitivity",
        TELEPRESENCE,
        "--mode",
        "montecarlo",
        "--samples",
        "2000",
        "--seed",
        "5",
        "--format",
        "machine",
    )
    code, first, _ = run(capsys, *args)
    assert code == 0
    _, second, _ = run(capsys, *args)
    assert first == second
    assert json.loads(first)["seed"] == 5


def test_sensitivity_human(capsys):
    code, out, _ = run(capsys, "sensitivity", TELEPRESENCE, "--mode", "tornado")
    assert code == 0
    assert out.startswith("Tornado")


# ---------------------------------------------------------------------------
# baseline


def test_baseline_machine(capsys):
    code, out, _ = run(
        capsys, "baseline", TELEPRESENCE, "--horizon", "4", "--format", "machine"
    )
    assert code == 0
    data = json.loads(out)
    assert data["horizon"] == 4
    assert len(data["points"]) == 5
    assert data["points"][0]["baseline_kg"] == 10_200_000.0


def test_baseline_without_model_fails(capsys):
    code, _, err = run(capsys, "baseline", EBOOK, "--horizon", "4")
    assert code == 1
    assert "[missing-field]" in err


# ---------------------------------------------------------------------------
# audit


def test_audit_clean_scenario(capsys):
    code, out, _ = run(capsys, "audit", TELEPRESENCE)
    assert code == 0
    assert "none" in out


def test_audit_error_flags_exit_two(capsys):
    code, out, _ = run(capsys, "audit", NTT_2010, "--format", "machine")
    assert code == 2
    flags = json.loads(out)["flags"]
    assert flags[0]["code"] == "REBOUND_IGNORED"
    assert flags[0]["severity"] == "error"


def test_audit_warning_only_exit_zero(capsys):
    # The e-book scenario only misses a projected baseline: a warning.
    code, out, _ = run(capsys, "audit", EBOOK, "--format", "machine")
    assert code == 0
    codes = [f["code"] for f in json.loads(out)["flags"]]
    assert codes == ["FIXED_BASELINE"]


# ---------------------------------------------------------------------------
# calibrate-k


def test_calibrate_machine(capsys):
    code, out, _ = run(
        capsys,
        "calibrate-k",
        "--case-avg",
        "17.5",
        "--population-avg",
        "2.0",
        "--format",
        "machine",
    )
    assert code == 0
    k = json.loads(out)["k"]
    assert 0.100 <= k <= 0.134


def test_calibrate_human(capsys):
    code, out, _ = run(capsys, "calibrate-k", "--case-avg", "17.5", "--population-avg", "2.0")
    assert code == 0
    assert "0.114286" in out


def test_calibrate_impossible(capsys):
    code, _, err = run(capsys, "calibrate-k", "--case-avg", "0", "--population-avg", "2.0")
    assert code == 1
    assert "[calibration-impossible]" in err


# ---------------------------------------------------------------------------
# validate


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", TELEPRESENCE, "--format", "machine")
    assert code == 0
    data = json.loads(out)
    assert data["valid"] is True
    assert data["issues"] == []


def test_validate_invalid_exit_two(capsys, tmp_path):
    payload = json.loads((SCENARIO_DIR / "ebook_model_average.json").read_text())
    payload["scenario"]["coefficient"] = {"k": -1.0, "source": "user"}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "validate", str(bad), "--format", "machine")
    assert code == 2
    data = json.loads(out)
    assert data["valid"] is False
    assert any(i["code"] == "non-positive-coefficient" for i in data["issues"])


def test_validate_human_shows_issue_paths(capsys, tmp_path):
    payload = json.loads((SCENARIO_DIR / "ebook_model_average.json").read_text())
    payload["scenario"]["coefficient"] = {"k": -1.0, "source": "user"}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2
    assert "INVALID" in out
    assert "coefficient.k" in out


# ---------------------------------------------------------------------------
# serve and argparse behaviour


def test_serve_rejects_malformed_address(capsys):
    code, _, err = run(capsys, "serve", "--addr", "nonsense")
    assert code == 1
    assert "[invalid-address]" in err


def test_missing_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main([])
    assert exc_info.value.code == 2


def test_unknown_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["frobnicate"])
    assert exc_info.value.code == 2
