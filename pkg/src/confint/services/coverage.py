"""Coverage experiments: exact enumeration for the binomial, Monte-Carlo for the rest."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from rich.console import Console

from confint.models.coverage import CoverageCurve, ExperimentConfig, Family
from confint.models.intervals import BinomMethod, BootKind, MeanMethod, MlMethod, Sample
from confint.numerics.distributions import normal_quantile
from confint.numerics.rng import RngStream
from confint.services.binomial import default_grid, exact_coverage_binom, interval_bounds
from confint.services.bootstrap import bca_levels, empirical_quantile, percentile_bounds, replicate
from confint.services.estimators import EXP_RATE, MEAN, Estimator
from confint.services.mean import lr_normal_half_width, lr_t_half_width, t_half_width, z_half_width
from confint.services.ml import delete_one_means, jackknife_spread, jackknife_values
from confint.utils.chunking import chunk_ranges
from confint.utils.errors import DegenerateBootstrapError, DomainError

logger = logging.getLogger(__name__)
console = Console(stderr=True)

# stream ids: (n << 40) | (kind << 32) | index
_OUTER_STREAM = 0
_BOOT_STREAM = 1
_BOOT_TAGS = {kind.tag: kind for kind in BootKind}


def stream_id(n: int, kind: int, index: int) -> int:
    return (n << 40) | (kind << 32) | index


# ── samplers ──────────────────────────────────────────────────────────


def cubic_draws(rng: RngStream, size) -> np.ndarray:
    """Transformation method for f(x) = 3x^2 on [0, 1]: U^(1/3)."""
    return np.cbrt(rng.uniforms(size))


def exponential_draws(rng: RngStream, size, lam: float) -> np.ndarray:
    """Inverse-CDF method: -ln(1 - U) / lambda."""
    if not lam > 0.0:
        raise DomainError(f"exponential rate must be positive, got {lam}")
    return -np.log1p(-rng.uniforms(size)) / lam


def sample_cubic(n: int, rng: RngStream) -> Sample:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return Sample.of(cubic_draws(rng, n))


def sample_exponential(n: int, lam: float, rng: RngStream) -> Sample:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return Sample.of(exponential_draws(rng, n, lam))


# ── chunk workers ─────────────────────────────────────────────────────


@dataclass
class _Tally:
    covered: int = 0
    length_sum: float = 0.0
    estimate_sum: float = 0.0
    count: int = 0
    degenerate: int = 0
    errors: list[np.ndarray] = field(default_factory=list)
    sigmas: list[np.ndarray] = field(default_factory=list)

    def add(self, covered: np.ndarray, lengths: np.ndarray, estimates: np.ndarray) -> None:
        self.covered += int(np.count_nonzero(covered))
        self.length_sum += float(np.sum(lengths))
        self.estimate_sum += float(np.sum(estimates))
        self.count += int(np.size(covered))

    def merge(self, other: _Tally) -> None:
        self.covered += other.covered
        self.length_sum += other.length_sum
        self.estimate_sum += other.estimate_sum
        self.count += other.count
        self.degenerate += other.degenerate
        self.errors.extend(other.errors)
        self.sigmas.extend(other.sigmas)


@dataclass(frozen=True)
class _ChunkTask:
    config: ExperimentConfig
    n: int
    index: int
    start: int
    stop: int


def _draw(config: ExperimentConfig, rng: RngStream, rows: int, n: int) -> np.ndarray:
    if config.family == Family.MEAN_CUBIC:
        return cubic_draws(rng, (rows, n))
    return exponential_draws(rng, (rows, n), config.truth)


def _classical_mean(config: ExperimentConfig, method: str, x: np.ndarray, tally: _Tally) -> None:
    n = x.shape[1]
    est = x.mean(axis=1)
    var = x.var(axis=1, ddof=1)
    if method == MeanMethod.T.value:
        half = t_half_width(n, var, config.alpha)
    elif method == MeanMethod.Z.value:
        half = z_half_width(n, var, config.alpha)
    elif method == MeanMethod.LR_T.value:
        half = lr_t_half_width(n, var, config.k_ratio)
    else:
        half = lr_normal_half_width(n, var, config.k_ratio)
    tally.add(np.abs(est - config.truth) <= half, 2.0 * half, est)


def _classical_exp(config: ExperimentConfig, method: str, x: np.ndarray, tally: _Tally) -> None:
    n = x.shape[1]
    est = 1.0 / x.mean(axis=1)
    if method == MlMethod.HESSIAN.value:
        sigma = est / math.sqrt(n)
    else:
        sigma = jackknife_spread(1.0 / delete_one_means(x), axis=1)
    half = normal_quantile(1.0 - config.alpha / 2.0) * sigma
    error = np.abs(est - config.truth)
    tally.add(error <= half, 2.0 * half, est)
    tally.errors.append(error)
    tally.sigmas.append(sigma)


def _bootstrap_row(
    config: ExperimentConfig,
    estimator: Estimator,
    x: np.ndarray,
    rng: RngStream,
    methods: list[str],
    tallies: dict[str, _Tally],
) -> None:
    theta = float(estimator(x))
    sorted_reps = np.sort(replicate(x, estimator, config.boot_r, rng))
    lower, upper = percentile_bounds(sorted_reps, config.alpha)
    for method in methods:
        kind = _BOOT_TAGS[method]
        tally = tallies[method]
        if kind == BootKind.PERCENTILE:
            lo, hi = lower, upper
        elif kind == BootKind.BASIC:
            lo, hi = 2.0 * theta - upper, 2.0 * theta - lower
        else:
            try:
                alpha_1, alpha_2 = bca_levels(sorted_reps, theta, jackknife_values(estimator, x), config.alpha)
            except DegenerateBootstrapError:
                # counted as a miss of zero length
                tally.degenerate += 1
                tally.add(np.array([False]), np.array([0.0]), np.array([theta]))
                continue
            lo, hi = sorted(
                (empirical_quantile(sorted_reps, alpha_1), empirical_quantile(sorted_reps, alpha_2))
            )
        tally.add(np.array([lo <= config.truth <= hi]), np.array([hi - lo]), np.array([theta]))


def _run_chunk(task: _ChunkTask) -> dict[str, _Tally]:
    """Replications [start, stop) of one sample size; deterministic in (seed, n, chunk index)."""
    config, n = task.config, task.n
    rng = RngStream(config.seed, stream_id(n, _OUTER_STREAM, task.index))
    x = _draw(config, rng, task.stop - task.start, n)
    tallies = {method: _Tally() for method in config.methods}

    classical = [m for m in config.methods if m not in _BOOT_TAGS]
    classical_rows = max(0, min(task.stop, config.n_reps) - task.start)
    if classical and classical_rows:
        worker = _classical_mean if config.family == Family.MEAN_CUBIC else _classical_exp
        for method in classical:
            worker(config, method, x[:classical_rows], tallies[method])

    boot = [m for m in config.methods if m in _BOOT_TAGS]
    boot_rows = max(0, min(task.stop, config.outer_reps_boot) - task.start)
    if boot and boot_rows:
        estimator = MEAN if config.family == Family.MEAN_CUBIC else EXP_RATE
        for i in range(boot_rows):
            inner = RngStream(config.seed, stream_id(n, _BOOT_STREAM, task.start + i))
            _bootstrap_row(config, estimator, x[i], inner, boot, tallies)
    return tallies


# ── length curves ─────────────────────────────────────────────────────


def binom_length_curves(
    n_values: list[int],
    alpha: float = 0.05,
    k_ratio: float = 8.0,
    methods: list[str] | None = None,
    sweep_n: int | None = 100,
) -> tuple[list[dict], list[dict]]:
    """Maximum interval length per n, and length against p_hat at sweep_n."""
    methods = methods or [m.value for m in BinomMethod]
    max_rows = []
    for method in methods:
        for n in n_values:
            lowers, uppers = interval_bounds(method, n, alpha, k_ratio)
            lengths = uppers - lowers
            k = int(np.argmax(lengths))
            max_rows.append({"n": n, "method": method, "max_length": float(lengths[k]), "p_hat": k / n})
    sweep_rows = []
    if sweep_n:
        for method in methods:
            lowers, uppers = interval_bounds(method, sweep_n, alpha, k_ratio)
            for k, length in enumerate((uppers - lowers).tolist()):
                sweep_rows.append({"p_hat": k / sweep_n, "method": method, "length": length})
    return max_rows, sweep_rows


# ── service ───────────────────────────────────────────────────────────


class CoverageService:
    """Runs coverage experiments and turns the tallies into coverage curves."""

    def __init__(self, quiet: bool = False) -> None:
        self._quiet = quiet

    def _progress(self, message: str) -> None:
        if not self._quiet:
            console.print(f"[dim]{message}[/dim]")

    def run(self, config: ExperimentConfig) -> list[CoverageCurve]:
        if config.family == Family.BINOM_EXACT:
            return self.exact_binom(config)
        if config.family == Family.MEAN_CUBIC:
            return self.run_mean_experiment(config)
        if config.family == Family.EXP_ML:
            return self.run_exp_experiment(config)
        raise DomainError(f"{config.family.value} produces length tables, not coverage curves")

    def exact_binom(self, config: ExperimentConfig) -> list[CoverageCurve]:
        if config.family != Family.BINOM_EXACT:
            raise DomainError(f"expected a binom-exact experiment, got {config.family.value}")
        n = config.n_values[0]
        grid = default_grid(config.grid_points)
        curves = []
        for method in config.methods:
            self._progress(f"Enumerating {method} coverage at n={n} over {grid.size} grid points...")
            curves.append(
                exact_coverage_binom(method, n, grid, alpha=config.alpha, k_ratio=config.k_ratio)
            )
        return curves

    def run_mean_experiment(self, config: ExperimentConfig) -> list[CoverageCurve]:
        """Coverage of the true mean 3/4 for samples from the density 3x^2."""
        if config.family != Family.MEAN_CUBIC:
            raise DomainError(f"expected a mean-cubic experiment, got {config.family.value}")
        return self._simulate(config)

    def run_exp_experiment(self, config: ExperimentConfig) -> list[CoverageCurve]:
        """Coverage of the exponential rate by its ML estimator."""
        if config.family != Family.EXP_ML:
            raise DomainError(f"expected an exp-ml experiment, got {config.family.value}")
        return self._simulate(config)

    def binom_max_lengths(self, config: ExperimentConfig, sweep_n: int | None = None) -> tuple[list[dict], list[dict]]:
        self._progress(f"Computing interval lengths for n in {config.n_values}...")
        return binom_length_curves(config.n_values, config.alpha, config.k_ratio, config.methods, sweep_n)

    def binom_length_sweep(
        self,
        n: int,
        methods: list[str] | None = None,
        alpha: float = 0.05,
        k_ratio: float = 8.0,
    ) -> list[dict]:
        _, sweep = binom_length_curves([], alpha, k_ratio, methods, sweep_n=n)
        return sweep

    # ── simulation core ───────────────────────────────────────────────

    def _simulate(self, config: ExperimentConfig) -> list[CoverageCurve]:
        totals: dict[str, dict[int, _Tally]] = {m: {} for m in config.methods}
        has_classical = any(m not in _BOOT_TAGS for m in config.methods)
        has_boot = any(m in _BOOT_TAGS for m in config.methods)
        total = max(config.n_reps if has_classical else 0, config.outer_reps_boot if has_boot else 0)

        for n in config.n_values:
            tasks = [
                _ChunkTask(config=config, n=n, index=i, start=start, stop=stop)
                for i, (start, stop) in enumerate(chunk_ranges(total, config.chunk_size))
            ]
            self._progress(
                f"{config.family.value}: n={n}, {total} replications in {len(tasks)} chunks "
                f"({config.workers} worker{'s' if config.workers > 1 else ''})..."
            )
            if config.workers > 1:
                with ProcessPoolExecutor(max_workers=config.workers) as pool:
                    results = list(pool.map(_run_chunk, tasks))
            else:
                results = [_run_chunk(task) for task in tasks]

            for method in config.methods:
                merged = _Tally()
                for result in results:
                    merged.merge(result[method])
                if merged.degenerate:
                    logger.warning(
                        "%s at n=%d: %d degenerate BCa replications counted as misses",
                        method, n, merged.degenerate,
                    )
                totals[method][n] = merged

        return [self._curve(method, config.n_values, totals[method]) for method in config.methods]

    @staticmethod
    def _curve(method: str, n_values: list[int], tallies: dict[int, _Tally]) -> CoverageCurve:
        coverage, mean_length, stderr, estimate, corr = [], [], [], [], []
        for n in n_values:
            t = tallies[n]
            cov = t.covered / t.count
            coverage.append(cov)
            mean_length.append(t.length_sum / t.count)
            stderr.append(math.sqrt(cov * (1.0 - cov) / t.count))
            estimate.append(t.estimate_sum / t.count)
            if t.errors:
                r = np.corrcoef(np.concatenate(t.errors), np.concatenate(t.sigmas))[0, 1]
                corr.append(float(r) if np.isfinite(r) else None)
        reps = {tallies[n].count for n in n_values}
        return CoverageCurve(
            method=method,
            x_axis=[float(n) for n in n_values],
            coverage=coverage,
            mean_length=mean_length,
            n_reps=reps.pop() if len(reps) == 1 else max(reps),
            mc_stderr=stderr,
            mean_estimate=estimate,
            corr_error_sigma=corr if corr else None,
        )
