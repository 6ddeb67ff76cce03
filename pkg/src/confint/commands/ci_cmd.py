"""CLI commands that compute intervals for one data set."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console

from confint.config import get_config
from confint.models.intervals import (
    BinomMethod,
    BinomObservation,
    BootKind,
    IntervalReport,
    MeanMethod,
    MlMethod,
)
from confint.numerics.rng import RngStream
from confint.services.binomial import binom_interval
from confint.services.bootstrap import RECOMMENDED_R, boot_distribution, boot_interval
from confint.services.estimators import BUILTIN_ESTIMATORS
from confint.services.mean import mean_interval
from confint.services.ml import exp_mle, exp_model, fit_ml, hessian_ci, jackknife_ci
from confint.utils.datafile import read_sample
from confint.utils.errors import ConfintError, handle_error
from confint.utils.output import OutputFormat, print_output

console = Console(stderr=True)
app = typer.Typer(name="ci", help="Compute confidence intervals for a single data set.", no_args_is_help=True)

REPORT_COLUMNS = ["method", "lower", "upper"]
DETAIL_COLUMNS = ["method", "lower", "upper", "level", "point_estimate", "n", "r", "seed"]

FileOption = Annotated[
    Path, typer.Option("--file", "-f", help="Data file: one value per line, '#' comments")
]
AlphaOption = Annotated[float, typer.Option("--alpha", "-a", help="Non-coverage probability, 0 < alpha < 1")]
OutputOption = Annotated[OutputFormat, typer.Option("--output", "-o")]
JsonOption = Annotated[bool, typer.Option("--json", help="Shorthand for --output json")]


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise typer.BadParameter(f"must lie strictly between 0 and 1, got {alpha}", param_hint="--alpha")


def _check_k_ratio(k_ratio: float) -> None:
    if not k_ratio > 1.0:
        raise typer.BadParameter(f"must be greater than 1, got {k_ratio}", param_hint="--k-ratio")


def _emit(reports: list[IntervalReport], output: OutputFormat, as_json: bool, title: str) -> None:
    fmt = OutputFormat.JSON if as_json else output
    rows = [r.to_row() for r in reports]
    columns = REPORT_COLUMNS if fmt == OutputFormat.TEXT else [c for c in DETAIL_COLUMNS if c in rows[0]]
    print_output(rows, fmt, columns=columns, title=title)


def _fail(error: Exception) -> typer.Exit:
    return typer.Exit(handle_error(error))


@app.command("binom")
def ci_binom(
    n: Annotated[int, typer.Option("--n", help="Number of trials", min=1)],
    k: Annotated[int, typer.Option("--k", help="Number of successes", min=0)],
    alpha: AlphaOption = 0.05,
    k_ratio: Annotated[float, typer.Option("--k-ratio", help="Likelihood ratio K for the lr method")] = 8.0,
    method: Annotated[
        list[BinomMethod] | None, typer.Option("--method", "-m", help="Interval method (repeatable; default all)")
    ] = None,
    output: OutputOption = OutputFormat.TEXT,
    as_json: JsonOption = False,
) -> None:
    """Intervals for a binomial proportion from n trials with k successes."""
    if k > n:
        raise typer.BadParameter(f"k={k} exceeds n={n}", param_hint="--k")
    _check_alpha(alpha)
    _check_k_ratio(k_ratio)
    methods = method or list(BinomMethod)
    obs = BinomObservation(n=n, k=k)

    try:
        reports = [
            IntervalReport.from_interval(binom_interval(m, obs, alpha, k_ratio), point_estimate=obs.p_hat, n=n)
            for m in methods
        ]
    except (ConfintError, ValueError, ArithmeticError) as e:
        raise _fail(e)
    _emit(reports, output, as_json, title=f"Binomial intervals (n={n}, k={k})")


@app.command("mean")
def ci_mean(
    file: FileOption,
    alpha: AlphaOption = 0.05,
    k_ratio: Annotated[float, typer.Option("--k-ratio", help="Likelihood ratio K for lr methods")] = 8.0,
    method: Annotated[MeanMethod, typer.Option("--method", "-m", help="Interval method")] = MeanMethod.T,
    output: OutputOption = OutputFormat.TEXT,
    as_json: JsonOption = False,
) -> None:
    """Interval for the mean of the values in a data file."""
    _check_alpha(alpha)
    _check_k_ratio(k_ratio)

    try:
        sample = read_sample(file)
        interval = mean_interval(method, sample, alpha, k_ratio)
        report = IntervalReport.from_interval(interval, point_estimate=sample.mean, n=sample.n)
    except (ConfintError, ValueError, ArithmeticError) as e:
        raise _fail(e)
    _emit([report], output, as_json, title=f"Mean interval ({file.name})")


@app.command("boot")
def ci_boot(
    file: FileOption,
    alpha: AlphaOption = 0.05,
    r: Annotated[int, typer.Option("--r", help="Bootstrap replications", min=1)] = RECOMMENDED_R,
    seed: Annotated[int | None, typer.Option("--seed", help="Random seed (default from settings)", min=0)] = None,
    estimator: Annotated[
        str, typer.Option("--estimator", "-e", help="Statistic: mean or exp-lambda")
    ] = "mean",
    kind: Annotated[BootKind, typer.Option("--kind", help="Bootstrap interval type")] = BootKind.PERCENTILE,
    output: OutputOption = OutputFormat.TEXT,
    as_json: JsonOption = False,
) -> None:
    """Non-parametric bootstrap interval; deterministic for a given seed."""
    _check_alpha(alpha)
    if estimator not in BUILTIN_ESTIMATORS:
        raise typer.BadParameter(
            f"unknown estimator '{estimator}'; choose from {', '.join(BUILTIN_ESTIMATORS)}", param_hint="--estimator"
        )
    if r < RECOMMENDED_R:
        console.print(f"[yellow]Warning:[/yellow] r={r} is below the recommended minimum of {RECOMMENDED_R}")
    seed = get_config().settings.seed if seed is None else seed
    stat = BUILTIN_ESTIMATORS[estimator]

    try:
        sample = read_sample(file)
        reps = boot_distribution(sample, stat, r, RngStream(seed))
        interval = boot_interval(kind, reps, sample, stat, alpha)
        report = IntervalReport.from_interval(interval, point_estimate=reps.theta_hat, n=sample.n, r=r, seed=seed)
    except (ConfintError, ValueError, ArithmeticError) as e:
        raise _fail(e)
    _emit([report], output, as_json, title=f"Bootstrap interval ({file.name})")


@app.command("ml")
def ci_ml(
    file: FileOption,
    alpha: AlphaOption = 0.05,
    method: Annotated[MlMethod, typer.Option("--method", "-m", help="Standard deviation estimate")] = MlMethod.HESSIAN,
    output: OutputOption = OutputFormat.TEXT,
    as_json: JsonOption = False,
) -> None:
    """Interval for the exponential rate lambda by maximum likelihood.

    hessian fits the log-likelihood numerically and inverts its curvature;
    jackknife uses delete-one estimates of 1/mean.
    """
    _check_alpha(alpha)

    try:
        sample = read_sample(file)
        if method == MlMethod.HESSIAN:
            fit = fit_ml(exp_model(), sample)
            interval = hessian_ci(fit, 0, alpha)
            estimate = float(fit.theta_hat[0])
        else:
            stat = BUILTIN_ESTIMATORS["exp-lambda"]
            estimate = exp_mle(sample)
            interval = jackknife_ci(stat, sample, alpha)
        report = IntervalReport.from_interval(interval, point_estimate=estimate, n=sample.n)
    except (ConfintError, ValueError, ArithmeticError) as e:
        raise _fail(e)
    _emit([report], output, as_json, title=f"ML interval ({file.name})")
