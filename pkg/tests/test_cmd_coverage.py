"""CLI tests for the coverage command group."""
import json
from unittest.mock import MagicMock, patch

import pytest
from typer.testing import CliRunner

from confint.commands.coverage_cmd import app
from confint.models.coverage import CoverageCurve, Family
from confint.services.coverage import CoverageService
from confint.utils.errors import FitError

runner = CliRunner()


def _curve(method="t", x=(10.0, 20.0), corr=None):
    size = len(x)
    return CoverageCurve(
        method=method,
        x_axis=list(x),
        coverage=[0.94] * size,
        mean_length=[0.2] * size,
        n_reps=1000,
        mc_stderr=[0.0075] * size,
        mean_estimate=[0.75] * size,
        corr_error_sigma=corr,
    )


@pytest.fixture
def patched(fake_config):
    """Mock service plus the fake config, patched into the command module."""
    svc = MagicMock()
    with (
        patch("confint.commands.coverage_cmd._build_service", return_value=svc),
        patch("confint.commands.coverage_cmd.get_config", return_value=fake_config),
    ):
        yield svc


# ── binom-exact ──────────────────────────────────────────────────────


def test_binom_exact_csv(patched):
    patched.run.return_value = [_curve("exact", x=(0.0, 0.5, 1.0))]
    result = runner.invoke(app, ["binom-exact", "--n", "30", "-m", "exact"])
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "x,method,coverage,mean_length,mc_stderr,n_reps"
    assert lines[1] == "0,exact,0.94,0.2,0.0075,1000"
    assert len(lines) == 4
    config = patched.run.call_args[0][0]
    assert config.family == Family.BINOM_EXACT
    assert config.n_values == [30]
    assert config.methods == ["exact"]
    assert config.grid_points == 101


def test_binom_exact_real_service():
    with patch("confint.commands.coverage_cmd._build_service", return_value=CoverageService(quiet=True)):
        result = runner.invoke(app, ["binom-exact", "--n", "10", "--grid-points", "11", "-m", "exact", "-m", "wald"])
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 1 + 2 * 11
    exact_rows = [line.split(",") for line in lines[1:] if ",exact," in line]
    assert all(float(row[2]) >= 0.95 for row in exact_rows)
    assert all(row[5] == "0" for row in exact_rows)


# ── mean-cubic / exp-ml ──────────────────────────────────────────────


def test_mean_cubic_uses_flags_and_settings(patched):
    patched.run.return_value = [_curve("t"), _curve("z")]
    result = runner.invoke(app, ["mean-cubic", "--n", "10", "--n", "20", "-m", "t", "-m", "z", "--seed", "5"])
    assert result.exit_code == 0
    config = patched.run.call_args[0][0]
    assert config.family == Family.MEAN_CUBIC
    assert config.n_values == [10, 20]
    assert config.seed == 5
    assert config.n_reps == 2000
    assert config.boot_r == 200
    rows = result.stdout.strip().splitlines()
    assert [r.split(",")[1] for r in rows[1:]] == ["t", "t", "z", "z"]


def test_mean_cubic_details(patched):
    patched.run.return_value = [_curve("t")]
    result = runner.invoke(app, ["mean-cubic", "--n", "10", "--n", "20", "--details"])
    assert result.exit_code == 0
    header = result.stdout.splitlines()[0]
    assert header.endswith(",mean_estimate,corr_error_sigma")


def test_mean_cubic_json(patched):
    patched.run.return_value = [_curve("t")]
    result = runner.invoke(app, ["mean-cubic", "-o", "json"])
    assert result.exit_code == 0
    rows = json.loads(result.stdout)
    assert rows[0]["coverage"] == 0.94
    assert rows[0]["x"] == 10.0


def test_exp_ml_details_with_correlation(patched):
    patched.run.return_value = [_curve("hessian", corr=[0.61, None])]
    result = runner.invoke(app, ["exp-ml", "--n", "10", "--n", "20", "--true-param", "3", "--details"])
    assert result.exit_code == 0
    config = patched.run.call_args[0][0]
    assert config.truth == 3.0
    lines = result.stdout.strip().splitlines()
    assert lines[1].endswith(",0.75,0.61")
    assert lines[2].endswith(",0.75,")


@pytest.mark.parametrize(
    "args",
    [
        ["mean-cubic", "--n-reps", "0"],
        ["mean-cubic", "--k-ratio", "1"],
        ["mean-cubic", "--alpha", "1.2"],
        ["mean-cubic", "-m", "hessian"],
        ["mean-cubic", "--n", "1"],
        ["exp-ml", "--true-param", "-2"],
        ["binom-exact", "-m", "t"],
    ],
)
def test_usage_errors(patched, args):
    result = runner.invoke(app, args)
    assert result.exit_code == 2
    patched.run.assert_not_called()


def test_numeric_failure_exits_4(patched):
    patched.run.side_effect = FitError("likelihood optimizer did not converge")
    result = runner.invoke(app, ["exp-ml", "--n", "10"])
    assert result.exit_code == 4
    assert "NUMERIC_ERROR" in result.output


# ── lengths ──────────────────────────────────────────────────────────


_MAX_ROWS = [
    {"n": 20, "method": "wald", "max_length": 0.43, "p_hat": 0.5},
    {"n": 10, "method": "wald", "max_length": 0.62, "p_hat": 0.5},
]
_SWEEP_ROWS = [
    {"p_hat": 0.5, "method": "wald", "length": 0.19},
    {"p_hat": 0.0, "method": "wald", "length": 0.0},
]


def test_lengths_csv_two_tables(patched):
    patched.binom_max_lengths.return_value = ([dict(r) for r in _MAX_ROWS], [dict(r) for r in _SWEEP_ROWS])
    result = runner.invoke(app, ["lengths", "--n", "10", "--n", "20", "-m", "wald"])
    assert result.exit_code == 0
    blocks = result.stdout.strip().split("\n\n")
    assert len(blocks) == 2
    assert blocks[0].splitlines() == ["n,method,max_length,p_hat", "10,wald,0.62,0.5", "20,wald,0.43,0.5"]
    assert blocks[1].splitlines()[0] == "p_hat,method,length"
    assert blocks[1].splitlines()[1] == "0,wald,0"
    assert patched.binom_max_lengths.call_args.kwargs["sweep_n"] == 100


def test_lengths_json_single_object(patched):
    patched.binom_max_lengths.return_value = ([dict(r) for r in _MAX_ROWS], [dict(r) for r in _SWEEP_ROWS])
    result = runner.invoke(app, ["lengths", "-o", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert set(payload) == {"max_length", "by_p_hat"}
    assert payload["max_length"][0]["n"] == 10


def test_lengths_without_sweep(patched):
    patched.binom_max_lengths.return_value = ([dict(r) for r in _MAX_ROWS], [])
    result = runner.invoke(app, ["lengths", "--sweep-n", "0"])
    assert result.exit_code == 0
    assert "\n\n" not in result.stdout.strip()
    assert patched.binom_max_lengths.call_args.kwargs["sweep_n"] is None


# ── presets ──────────────────────────────────────────────────────────


def test_presets_listing(patched):
    result = runner.invoke(app, ["presets", "-o", "json"])
    assert result.exit_code == 0
    rows = json.loads(result.stdout)
    assert [r["name"] for r in rows] == ["binom-coverage", "binom-lengths", "mean-cubic"]
    assert rows[0]["family"] == "binom-exact"


def test_preset_runs_named_experiment(patched):
    patched.run.return_value = [_curve("exact", x=(0.5,))]
    result = runner.invoke(app, ["preset", "BINOM-COVERAGE"])
    assert result.exit_code == 0
    config = patched.run.call_args[0][0]
    assert config.n_values == [20]
    assert config.seed == 12345


def test_preset_lengths_family(patched):
    patched.binom_max_lengths.return_value = ([dict(r) for r in _MAX_ROWS], [])
    result = runner.invoke(app, ["preset", "binom-lengths"])
    assert result.exit_code == 0
    patched.binom_max_lengths.assert_called_once()
    patched.run.assert_not_called()


def test_unknown_preset(patched):
    result = runner.invoke(app, ["preset", "nope"])
    assert result.exit_code == 2
