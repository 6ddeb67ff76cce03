"""Non-parametric bootstrap: replication and the percentile, basic and BCa intervals."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from confint.models.intervals import BootKind, Interval, Sample
from confint.numerics.distributions import normal_cdf, normal_quantile
from confint.numerics.rng import RngStream
from confint.services.estimators import Estimator, as_estimator
from confint.services.ml import jackknife_values
from confint.utils.errors import DegenerateBootstrapError, DomainError

logger = logging.getLogger(__name__)

RECOMMENDED_R = 1000
_RANK_SLACK = 1e-9


@dataclass
class BootstrapReplicates:
    """Estimate on the original sample plus r resampled estimates, in generation order."""

    theta_hat: float
    replicates: np.ndarray

    @property
    def r(self) -> int:
        return int(self.replicates.size)

    def sorted(self) -> np.ndarray:
        return np.sort(self.replicates)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def _check_r(reps: BootstrapReplicates) -> None:
    if reps.r < 2:
        raise DomainError(f"bootstrap intervals need at least 2 replicates, got r={reps.r}")


def resample(sample: Sample, rng: RngStream) -> Sample:
    """n draws with replacement from the sample."""
    idx = rng.choices(sample.n, sample.n)
    return Sample.of(sample.array[idx])


def replicate(values: np.ndarray, estimator: Estimator, r: int, rng: RngStream) -> np.ndarray:
    """Estimator over r resamples of a raw value array."""
    n = values.size
    idx = rng.choices(n, (r, n))
    return estimator.over_rows(values[idx])


def boot_distribution(
    sample: Sample,
    estimator: Estimator | Callable,
    r: int = RECOMMENDED_R,
    rng: RngStream | None = None,
) -> BootstrapReplicates:
    """Simulated distribution of the estimator under resampling."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if rng is None:
        raise DomainError("boot_distribution needs an RngStream")
    estimator = as_estimator(estimator)
    theta_hat = float(estimator(sample.array))
    replicates = replicate(sample.array, estimator, r, rng)
    logger.debug("bootstrap: r=%d theta_hat=%.6g stream=%r", r, theta_hat, rng)
    return BootstrapReplicates(theta_hat=theta_hat, replicates=replicates)


# ── quantiles ─────────────────────────────────────────────────────────


def _rank(q, r: int) -> np.ndarray:
    """1-based order-statistic rank ceil((r + 1) q), clamped to [1, r]."""
    rank = np.ceil((r + 1) * np.asarray(q, dtype=float) - _RANK_SLACK).astype(int)
    return np.clip(rank, 1, r)


def empirical_quantile(sorted_reps: np.ndarray, q):
    """Order statistic of rank ceil((r + 1) q) along the last axis.

    sorted_reps may be a batch of shape (rows, r); q is then a scalar or
    one probability per row.
    """
    sorted_reps = np.asarray(sorted_reps, dtype=float)
    r = sorted_reps.shape[-1]
    idx = _rank(q, r) - 1
    if sorted_reps.ndim == 1:
        picked = sorted_reps[idx]
        return float(picked) if np.ndim(picked) == 0 else picked
    idx = np.broadcast_to(idx, sorted_reps.shape[:-1])
    return np.take_along_axis(sorted_reps, idx[..., None], axis=-1)[..., 0]


def percentile_bounds(sorted_reps: np.ndarray, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    return empirical_quantile(sorted_reps, alpha / 2.0), empirical_quantile(sorted_reps, 1.0 - alpha / 2.0)


def bca_levels(
    sorted_reps: np.ndarray,
    theta_hat: float,
    jack: np.ndarray,
    alpha: float,
) -> tuple[float, float]:
    """Adjusted tail probabilities (alpha_1, alpha_2) of the BCa interval.

    Bias correction counts replicates equal to theta_hat as half below.
    Acceleration is the skewness of the jackknife values; zero dispersion
    gives zero acceleration.
    """
    r = sorted_reps.size
    below = np.searchsorted(sorted_reps, theta_hat, side="left")
    ties = np.searchsorted(sorted_reps, theta_hat, side="right") - below
    proportion = (below + 0.5 * ties) / r
    if proportion <= 0.0 or proportion >= 1.0:
        raise DegenerateBootstrapError(
            f"all {r} bootstrap replicates lie on one side of the estimate {theta_hat:.6g}; "
            "BCa bias correction is infinite"
        )
    z0 = normal_quantile(proportion)

    d = jack.mean() - jack
    ss = float(np.sum(d * d))
    accel = float(np.sum(d**3)) / (6.0 * ss**1.5) if ss > 0.0 else 0.0

    def adjusted(z_alpha: float) -> float:
        shift = z0 + z_alpha
        return normal_cdf(z0 + shift / (1.0 - accel * shift))

    return adjusted(normal_quantile(alpha / 2.0)), adjusted(normal_quantile(1.0 - alpha / 2.0))


# ── intervals ─────────────────────────────────────────────────────────


def percentile_interval(reps: BootstrapReplicates, alpha: float = 0.05) -> Interval:
    """[Q*(alpha/2), Q*(1 - alpha/2)] of the replicates."""
    _check_alpha(alpha)
    _check_r(reps)
    lower, upper = percentile_bounds(reps.sorted(), alpha)
    return Interval(lower=lower, upper=upper, method=BootKind.PERCENTILE.tag, level=1.0 - alpha)


def basic_interval(reps: BootstrapReplicates, alpha: float = 0.05) -> Interval:
    """Percentile interval reflected at theta_hat."""
    _check_alpha(alpha)
    _check_r(reps)
    lower, upper = percentile_bounds(reps.sorted(), alpha)
    theta = reps.theta_hat
    return Interval(lower=2.0 * theta - upper, upper=2.0 * theta - lower, method=BootKind.BASIC.tag, level=1.0 - alpha)


def bca_interval(
    reps: BootstrapReplicates,
    sample: Sample,
    estimator: Estimator | Callable,
    alpha: float = 0.05,
) -> Interval:
    """Bias-corrected and accelerated percentile interval."""
    _check_alpha(alpha)
    _check_r(reps)
    if sample.n < 2:
        raise DomainError(f"BCa needs at least 2 observations, got n={sample.n}")
    sorted_reps = reps.sorted()
    jack = jackknife_values(estimator, sample)
    alpha_1, alpha_2 = bca_levels(sorted_reps, reps.theta_hat, jack, alpha)
    lo, hi = empirical_quantile(sorted_reps, alpha_1), empirical_quantile(sorted_reps, alpha_2)
    return Interval(lower=min(lo, hi), upper=max(lo, hi), method=BootKind.BCA.tag, level=1.0 - alpha)


def boot_interval(
    kind: BootKind | str,
    reps: BootstrapReplicates,
    sample: Sample,
    estimator: Estimator | Callable,
    alpha: float = 0.05,
) -> Interval:
    kind = BootKind(kind)
    if kind == BootKind.PERCENTILE:
        return percentile_interval(reps, alpha)
    if kind == BootKind.BASIC:
        return basic_interval(reps, alpha)
    return bca_interval(reps, sample, estimator, alpha)
