import csv
import json

import pytest
from typer.testing import CliRunner

from twopoint.cli.app import app, parse_tolerances
from twopoint.cli.output import CSV_FIELDS, SCHEMA_VERSION, summary_path
from twopoint.errors import ConfigError


@pytest.fixture()
def runner(monkeypatch) -> CliRunner:
    monkeypatch.setenv("TWOPOINT_WORKERS", "1")
    return CliRunner()


def test_parse_tolerances() -> None:
    assert parse_tolerances(["--tol.rank4", "1e-2", "--tol.gradient=1e-7"]) == {"rank4": 1e-2, "gradient": 1e-7}
    assert parse_tolerances([]) == {}


@pytest.mark.parametrize(
    "args", [["--tol.rank4"], ["--tol.rank4", "loose"], ["--tol.", "1"], ["--bogus"], ["stray"]]
)
def test_parse_tolerances_invalid(args) -> None:
    with pytest.raises(ConfigError):
        parse_tolerances(args)


def test_models(runner) -> None:
    result = runner.invoke(app, ["models"])
    assert result.exit_code == 0
    assert "kl-bernoulli" in result.output
    assert "cantoni" in result.output


def test_extract_ok(runner, tmp_path) -> None:
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["extract", "--model", "quadratic:identity", "--points", "origin", "-o", str(out)])
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["command"] == "extract"
    assert doc["summary"]["exit_code"] == 0
    assert doc["config_echo"]["points"] == "origin"


def test_extract_csv(runner, tmp_path) -> None:
    out = tmp_path / "report.csv"
    result = runner.invoke(
        app, ["extract", "-m", "kl-categorical:3", "-p", "halton:2", "-o", str(out), "--format", "csv"]
    )
    assert result.exit_code == 0, result.output
    with out.open(newline="") as f:
        reader = csv.DictReader(f)
        rows = list(reader)
    assert tuple(reader.fieldnames) == CSV_FIELDS
    assert {r["point_index"] for r in rows} == {"0", "1"}
    with summary_path(out).open(newline="") as f:
        summary = list(csv.DictReader(f))
    assert [r["point_index"] for r in summary] == ["0", "1"]
    assert {"q0", "q1", "g_eig_min", "g_eig_max", "q1_max", "q2_max"} <= set(summary[0])
    assert all(float(r["g_eig_min"]) > 0 for r in summary)


def test_missing_model(runner) -> None:
    result = runner.invoke(app, ["extract"])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["extract", "--model", "gaussian"],
        ["extract", "--model", "kl-bernoulli", "--format", "xml"],
        ["extract", "--model", "kl-bernoulli", "--method", "symbolic"],
        ["extract", "--model", "kl-bernoulli", "--tol.rank4", "loose"],
        ["extract", "--model", "kl-bernoulli", "--points", "grid:x"],
        ["verify", "--only", "no-such-criterion"],
    ],
)
def test_config_errors(runner, args) -> None:
    assert runner.invoke(app, args).exit_code == 2


def test_config_file(runner, tmp_path) -> None:
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"model": "kl-bernoulli", "points": "0.3,0.7"}))
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["extract", "--config", str(path), "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())["summary"]["points"] == 2


def test_failed_check(runner) -> None:
    result = runner.invoke(
        app,
        [
            "extract",
            "--model",
            "kl-bernoulli",
            "--points",
            "0.3",
            "--method",
            "finite-difference",
            "--tol.metric_sign",
            "1e-300",
        ],
    )
    assert result.exit_code == 1


def test_domain_error(runner) -> None:
    assert runner.invoke(app, ["extract", "--model", "kl-bernoulli", "--points", "1.5"]).exit_code == 3
    assert runner.invoke(app, ["invert", "--model", "cantoni:2"]).exit_code == 3


@pytest.mark.slow
def test_invert(runner, tmp_path) -> None:
    out = tmp_path / "invert.json"
    result = runner.invoke(
        app, ["invert", "-m", "kl-bernoulli", "-p", "0.4", "--alpha", "0.25", "--grid", "100", "-o", str(out)]
    )
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert doc["config_echo"]["alpha"] == 0.25
    assert doc["config_echo"]["solver"]["grid"] == 100
    assert doc["summary"]["bvp_failures"] == 0


@pytest.mark.slow
def test_verify_only(runner, tmp_path) -> None:
    out = tmp_path / "verify.json"
    result = runner.invoke(app, ["verify", "--only", "integrator-order", "-o", str(out)])
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert [r["criterion"] for r in doc["results"]] == ["integrator-order"]
