"""CLI commands for coverage-probability and interval-length experiments."""

from __future__ import annotations

from typing import Annotated

import typer
from pydantic import ValidationError
from rich.console import Console

from confint.config import get_config
from confint.models.coverage import CURVE_COLUMNS, DETAIL_COLUMNS, ExperimentConfig, Family, curves_to_rows
from confint.services.coverage import CoverageService
from confint.utils.errors import ConfintError, handle_error
from confint.utils.output import OutputFormat, print_json, print_output

console = Console(stderr=True)
app = typer.Typer(name="coverage", help="Coverage probability and interval length experiments.", no_args_is_help=True)

MAX_LENGTH_COLUMNS = ["n", "method", "max_length", "p_hat"]
SWEEP_COLUMNS = ["p_hat", "method", "length"]

AlphaOption = Annotated[float, typer.Option("--alpha", "-a", help="Non-coverage probability, 0 < alpha < 1")]
KRatioOption = Annotated[float, typer.Option("--k-ratio", help="Likelihood ratio K for support intervals")]
MethodOption = Annotated[list[str] | None, typer.Option("--method", "-m", help="Method tag (repeatable; default all)")]
SeedOption = Annotated[int | None, typer.Option("--seed", help="Random seed (default from settings)", min=0)]
NRepsOption = Annotated[int | None, typer.Option("--n-reps", help="Outer replications N", min=1)]
BootNRepsOption = Annotated[int | None, typer.Option("--boot-n-reps", help="Outer replications for bootstrap methods", min=1)]
ROption = Annotated[int | None, typer.Option("--r", help="Inner bootstrap replications", min=2)]
WorkersOption = Annotated[int | None, typer.Option("--workers", "-w", help="Worker processes", min=1)]
DetailsOption = Annotated[bool, typer.Option("--details", help="Add mean_estimate and corr_error_sigma columns")]
OutputOption = Annotated[OutputFormat, typer.Option("--output", "-o")]


def _build_service() -> CoverageService:
    return CoverageService()


def _make_config(family: Family, **fields) -> ExperimentConfig:
    """ExperimentConfig from flags, falling back to settings for unset values."""
    k_ratio = fields.get("k_ratio")
    if k_ratio is not None and not k_ratio > 1.0:
        raise typer.BadParameter(f"must be greater than 1, got {k_ratio}", param_hint="--k-ratio")
    settings = get_config().settings
    defaults = {
        "seed": settings.seed,
        "workers": settings.workers,
        "chunk_size": settings.chunk_size,
        "n_reps": settings.n_reps,
        "boot_n_reps": settings.boot_n_reps,
        "boot_r": settings.boot_r,
        "grid_points": settings.grid_points,
    }
    defaults.update({k: v for k, v in fields.items() if v is not None})
    try:
        return ExperimentConfig(family=family, **defaults)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        raise typer.BadParameter(messages)


def _run_curves(config: ExperimentConfig, details: bool, output: OutputFormat) -> None:
    service = _build_service()
    try:
        curves = service.run(config)
    except (ConfintError, ValueError, ArithmeticError) as e:
        raise typer.Exit(handle_error(e))
    columns = CURVE_COLUMNS + (DETAIL_COLUMNS if details else [])
    print_output(curves_to_rows(curves, details), output, columns=columns, title=f"Coverage ({config.family.value})")


def _run_lengths(config: ExperimentConfig, sweep_n: int | None, output: OutputFormat) -> None:
    service = _build_service()
    try:
        max_rows, sweep_rows = service.binom_max_lengths(config, sweep_n=sweep_n)
    except (ConfintError, ValueError, ArithmeticError) as e:
        raise typer.Exit(handle_error(e))
    max_rows.sort(key=lambda r: (r["method"], r["n"]))
    sweep_rows.sort(key=lambda r: (r["method"], r["p_hat"]))
    if output == OutputFormat.JSON:
        print_json({"max_length": max_rows, "by_p_hat": sweep_rows})
        return
    print_output(max_rows, output, columns=MAX_LENGTH_COLUMNS, title="Maximum interval length")
    if sweep_rows:
        # blank line separates the two tables
        typer.echo("")
        print_output(sweep_rows, output, columns=SWEEP_COLUMNS, title=f"Length by p_hat (n={sweep_n})")


@app.command("binom-exact")
def coverage_binom_exact(
    n: Annotated[int, typer.Option("--n", help="Number of trials", min=1)] = 100,
    alpha: AlphaOption = 0.05,
    k_ratio: KRatioOption = 8.0,
    method: MethodOption = None,
    grid_points: Annotated[int | None, typer.Option("--grid-points", help="Points in the true-p grid", min=2)] = None,
    output: OutputOption = OutputFormat.CSV,
) -> None:
    """Exact coverage of binomial intervals over a grid of true p (no simulation)."""
    config = _make_config(
        Family.BINOM_EXACT, n_values=[n], alpha=alpha, k_ratio=k_ratio, methods=method, grid_points=grid_points
    )
    _run_curves(config, details=False, output=output)


@app.command("mean-cubic")
def coverage_mean_cubic(
    n: Annotated[list[int] | None, typer.Option("--n", help="Sample size (repeatable)")] = None,
    n_reps: NRepsOption = None,
    boot_n_reps: BootNRepsOption = None,
    r: ROption = None,
    alpha: AlphaOption = 0.05,
    k_ratio: KRatioOption = 8.0,
    seed: SeedOption = None,
    true_param: Annotated[float | None, typer.Option("--true-param", help="Mean to cover (default 3/4)")] = None,
    method: MethodOption = None,
    workers: WorkersOption = None,
    details: DetailsOption = False,
    output: OutputOption = OutputFormat.CSV,
) -> None:
    """Monte-Carlo coverage of mean intervals for samples from f(x) = 3x^2."""
    config = _make_config(
        Family.MEAN_CUBIC,
        n_values=n,
        n_reps=n_reps,
        boot_n_reps=boot_n_reps,
        boot_r=r,
        alpha=alpha,
        k_ratio=k_ratio,
        seed=seed,
        true_param=true_param,
        methods=method,
        workers=workers,
    )
    _run_curves(config, details, output)


@app.command("exp-ml")
def coverage_exp_ml(
    n: Annotated[list[int] | None, typer.Option("--n", help="Sample size (repeatable)")] = None,
    n_reps: NRepsOption = None,
    boot_n_reps: BootNRepsOption = None,
    r: ROption = None,
    alpha: AlphaOption = 0.05,
    seed: SeedOption = None,
    true_param: Annotated[float | None, typer.Option("--true-param", help="Exponential rate lambda (default 2)")] = None,
    method: MethodOption = None,
    workers: WorkersOption = None,
    details: DetailsOption = False,
    output: OutputOption = OutputFormat.CSV,
) -> None:
    """Monte-Carlo coverage of intervals for the exponential rate's ML estimator."""
    config = _make_config(
        Family.EXP_ML,
        n_values=n,
        n_reps=n_reps,
        boot_n_reps=boot_n_reps,
        boot_r=r,
        alpha=alpha,
        seed=seed,
        true_param=true_param,
        methods=method,
        workers=workers,
    )
    _run_curves(config, details, output)


@app.command("lengths")
def coverage_lengths(
    n: Annotated[list[int] | None, typer.Option("--n", help="Number of trials (repeatable)")] = None,
    alpha: AlphaOption = 0.05,
    k_ratio: KRatioOption = 8.0,
    method: MethodOption = None,
    sweep_n: Annotated[int, typer.Option("--sweep-n", help="n for the length-by-p_hat table; 0 to skip", min=0)] = 100,
    output: OutputOption = OutputFormat.CSV,
) -> None:
    """Maximum binomial interval length per n, and length against p_hat (exact)."""
    config = _make_config(
        Family.BINOM_LENGTHS,
        n_values=n or [10, 20, 50, 100, 200, 500],
        alpha=alpha,
        k_ratio=k_ratio,
        methods=method,
    )
    _run_lengths(config, sweep_n or None, output)


@app.command("presets")
def coverage_presets(
    output: OutputOption = OutputFormat.TABLE,
) -> None:
    """List the experiment presets from config/presets.yaml."""
    config = get_config()
    if not config.preset_names:
        console.print("No presets found.")
        return
    rows = []
    for name in config.preset_names:
        preset = config.get_preset(name)
        rows.append({
            "name": name,
            "family": preset.family.value,
            "n_values": " ".join(str(n) for n in preset.n_values),
            "methods": " ".join(preset.methods),
        })
    print_output(rows, output, columns=["name", "family", "n_values", "methods"], title="Presets")


@app.command("preset")
def coverage_preset(
    name: Annotated[str, typer.Argument(help="Preset name (see 'coverage presets')")],
    details: DetailsOption = False,
    output: OutputOption = OutputFormat.CSV,
) -> None:
    """Run a named experiment preset."""
    try:
        config = get_config().get_preset(name)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="NAME")
    if config.family == Family.BINOM_LENGTHS:
        _run_lengths(config, 100, output)
    else:
        _run_curves(config, details, output)
