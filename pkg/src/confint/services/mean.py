"""Confidence, support and HPD intervals for a mean value.

Every interval is x_bar +/- half-width. The half-width helpers accept
numpy arrays of variances so the coverage simulation can evaluate a
whole batch of samples at once.
"""

from __future__ import annotations

import math

import numpy as np

from confint.models.intervals import Calibration, Interval, MeanMethod, Sample
from confint.numerics.distributions import normal_cdf, normal_quantile, t_quantile
from confint.utils.errors import DomainError

# Above this sample size the t-calibrated support interval is replaced by its normal limit
LR_T_CROSSOVER = 1000


def _check_n(n: int) -> None:
    if n < 2:
        raise DomainError(f"mean intervals need at least 2 observations, got n={n}")


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def _check_k_ratio(k_ratio: float) -> None:
    if not k_ratio >= 1.0:
        raise DomainError(f"k_ratio must be >= 1, got {k_ratio}")


# ── half-widths ───────────────────────────────────────────────────────


def t_half_width(n: int, variance, alpha: float = 0.05):
    _check_n(n)
    _check_alpha(alpha)
    return t_quantile(1.0 - alpha / 2.0, n - 1) * np.sqrt(np.asarray(variance) / n)


def z_half_width(n: int, variance, alpha: float = 0.05):
    _check_n(n)
    _check_alpha(alpha)
    return normal_quantile(1.0 - alpha / 2.0) * np.sqrt(np.asarray(variance) / n)


def lr_normal_half_width(n: int, variance, k_ratio: float = 8.0):
    """sqrt(2 s^2 ln(K) / n)."""
    _check_n(n)
    _check_k_ratio(k_ratio)
    return np.sqrt(2.0 * np.asarray(variance) / n * math.log(k_ratio))


def lr_t_half_width(n: int, variance, k_ratio: float = 8.0):
    """sqrt((K^(2/n) - 1) s^2 (n - 1) / n), switching to the normal limit for large n.

    K^(2/n) - 1 is evaluated as expm1(2 ln(K) / n), which stays accurate
    while the exponent is small.
    """
    _check_n(n)
    _check_k_ratio(k_ratio)
    if n > LR_T_CROSSOVER:
        return lr_normal_half_width(n, variance, k_ratio)
    factor = math.expm1(2.0 * math.log(k_ratio) / n)
    return np.sqrt(factor * np.asarray(variance) * (n - 1) / n)


# ── intervals ─────────────────────────────────────────────────────────


def _centered(sample: Sample, half: float, method: str, level: float) -> Interval:
    center = sample.mean
    half = float(half)
    return Interval(lower=center - half, upper=center + half, method=method, level=level)


def t_interval(sample: Sample, alpha: float = 0.05) -> Interval:
    _check_n(sample.n)
    return _centered(sample, t_half_width(sample.n, sample.variance, alpha), MeanMethod.T.value, 1.0 - alpha)


def z_interval(sample: Sample, alpha: float = 0.05) -> Interval:
    _check_n(sample.n)
    return _centered(sample, z_half_width(sample.n, sample.variance, alpha), MeanMethod.Z.value, 1.0 - alpha)


def lr_support_mean_t(sample: Sample, k_ratio: float = 8.0) -> Interval:
    _check_n(sample.n)
    half = lr_t_half_width(sample.n, sample.variance, k_ratio)
    return _centered(sample, half, MeanMethod.LR_T.value, k_ratio)


def lr_support_mean_normal(sample: Sample, k_ratio: float = 8.0) -> Interval:
    _check_n(sample.n)
    half = lr_normal_half_width(sample.n, sample.variance, k_ratio)
    return _centered(sample, half, MeanMethod.LR_NORMAL.value, k_ratio)


def hpd_mean(sample: Sample, alpha: float = 0.05, calibration: Calibration | str = Calibration.T) -> Interval:
    """HPD interval of the mean under a flat prior.

    The posterior of mu is the sampling density of x_bar shifted to the
    data, so the HPD interval coincides with the t (or z) interval.
    """
    calibration = Calibration(calibration)
    if calibration == Calibration.T:
        return t_interval(sample, alpha).retag(MeanMethod.HPD_T.value)
    return z_interval(sample, alpha).retag(MeanMethod.HPD_NORMAL.value)


def mean_interval(method: MeanMethod | str, sample: Sample, alpha: float = 0.05, k_ratio: float = 8.0) -> Interval:
    method = MeanMethod(method)
    if method == MeanMethod.T:
        return t_interval(sample, alpha)
    if method == MeanMethod.Z:
        return z_interval(sample, alpha)
    if method == MeanMethod.LR_T:
        return lr_support_mean_t(sample, k_ratio)
    if method == MeanMethod.LR_NORMAL:
        return lr_support_mean_normal(sample, k_ratio)
    if method == MeanMethod.HPD_T:
        return hpd_mean(sample, alpha, Calibration.T)
    return hpd_mean(sample, alpha, Calibration.NORMAL)


# ── support / level correspondence ────────────────────────────────────


def equivalent_k_ratio(alpha: float = 0.05) -> float:
    """K at which the normal support interval equals the z interval: exp(z^2 / 2)."""
    _check_alpha(alpha)
    z = normal_quantile(1.0 - alpha / 2.0)
    return math.exp(0.5 * z * z)


def support_level(k_ratio: float = 8.0) -> float:
    """Nominal coverage of the normal support interval: 2 Phi(sqrt(2 ln K)) - 1."""
    _check_k_ratio(k_ratio)
    return 2.0 * normal_cdf(math.sqrt(2.0 * math.log(k_ratio))) - 1.0
