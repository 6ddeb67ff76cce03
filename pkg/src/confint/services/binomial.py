"""Confidence intervals for a binomial proportion and their exact coverage."""

from __future__ import annotations

import logging
import math
from functools import lru_cache

import numpy as np

from confint.models.coverage import CoverageCurve
from confint.models.intervals import BinomMethod, BinomObservation, Interval
from confint.models.numerics import Bracket
from confint.numerics.distributions import beta_quantile, binom_cdf, binom_pmf_table, normal_quantile
from confint.numerics.roots import find_root
from confint.services.hpd import hpd_interval
from confint.utils.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 1001


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def _clamped(lower: float, upper: float, method: str, level: float) -> Interval:
    return Interval(lower=min(1.0, max(0.0, lower)), upper=min(1.0, max(0.0, upper)), method=method, level=level)


def clopper_pearson(obs: BinomObservation, alpha: float = 0.05) -> Interval:
    """Exact interval: each tail probability equals alpha / 2 at its endpoint."""
    _check_alpha(alpha)
    n, k = obs.n, obs.k
    half = alpha / 2.0
    if k == 0:
        lower, upper = 0.0, 1.0 - half ** (1.0 / n)
    elif k == n:
        lower, upper = half ** (1.0 / n), 1.0
    else:
        lower = find_root(lambda p: 1.0 - binom_cdf(k - 1, n, p) - half, Bracket(lo=0.0, hi=1.0))
        upper = find_root(lambda p: binom_cdf(k, n, p) - half, Bracket(lo=0.0, hi=1.0))
    return _clamped(lower, upper, BinomMethod.EXACT.value, 1.0 - alpha)


def wilson(obs: BinomObservation, alpha: float = 0.05) -> Interval:
    """Score interval obtained by inverting the normal approximation."""
    _check_alpha(alpha)
    n, k, p_hat = obs.n, obs.k, obs.p_hat
    z = normal_quantile(1.0 - alpha / 2.0)
    z2 = z * z
    # closed forms at the ends; center -/+ half leaves rounding residue there
    if k == 0:
        return _clamped(0.0, z2 / (n + z2), BinomMethod.WILSON.value, 1.0 - alpha)
    if k == n:
        return _clamped(n / (n + z2), 1.0, BinomMethod.WILSON.value, 1.0 - alpha)
    denom = 1.0 + z2 / n
    center = (p_hat + z2 / (2.0 * n)) / denom
    half = z / denom * math.sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n))
    return _clamped(center - half, center + half, BinomMethod.WILSON.value, 1.0 - alpha)


def wald(obs: BinomObservation, alpha: float = 0.05) -> Interval:
    _check_alpha(alpha)
    p_hat = obs.p_hat
    z = normal_quantile(1.0 - alpha / 2.0)
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / obs.n)
    return _clamped(p_hat - half, p_hat + half, BinomMethod.WALD.value, 1.0 - alpha)


def log_likelihood_ratio(obs: BinomObservation, p: float) -> float:
    """ln(L(p) / L(p_hat)) with the convention 0 * ln 0 = 0."""
    n, k, p_hat = obs.n, obs.k, obs.p_hat
    value = 0.0
    if k > 0:
        value += k * (math.log(p) - math.log(p_hat)) if p > 0.0 else -math.inf
    if k < n:
        value += (n - k) * (math.log1p(-p) - math.log1p(-p_hat)) if p < 1.0 else -math.inf
    return value


def lr_support_binom(obs: BinomObservation, k_ratio: float = 8.0) -> Interval:
    """Support interval: every p whose likelihood is at least 1/K of the maximum."""
    if not k_ratio >= 1.0:
        raise DomainError(f"k_ratio must be >= 1, got {k_ratio}")
    log_k = math.log(k_ratio)
    p_hat = obs.p_hat

    def excess(p: float) -> float:
        return log_likelihood_ratio(obs, p) + log_k

    lower = 0.0 if obs.k == 0 else find_root(excess, Bracket(lo=0.0, hi=p_hat))
    upper = 1.0 if obs.k == obs.n else find_root(excess, Bracket(lo=p_hat, hi=1.0))
    return _clamped(lower, upper, BinomMethod.LR.value, k_ratio)


def hpd_binom(obs: BinomObservation, alpha: float = 0.05) -> Interval:
    """HPD interval of the Beta(k + 1, n - k + 1) posterior under a flat prior."""
    _check_alpha(alpha)
    a, b = obs.k + 1.0, obs.n - obs.k + 1.0
    interval = hpd_interval(lambda q: beta_quantile(q, a, b), alpha, method=BinomMethod.HPD.value)
    return _clamped(interval.lower, interval.upper, interval.method, interval.level)


_DISPATCH = {
    BinomMethod.EXACT: clopper_pearson,
    BinomMethod.WILSON: wilson,
    BinomMethod.WALD: wald,
    BinomMethod.HPD: hpd_binom,
}


def binom_interval(
    method: BinomMethod | str,
    obs: BinomObservation,
    alpha: float = 0.05,
    k_ratio: float = 8.0,
) -> Interval:
    """Interval of the given method; lr uses k_ratio, the rest use alpha."""
    method = BinomMethod(method)
    if method == BinomMethod.LR:
        return lr_support_binom(obs, k_ratio)
    return _DISPATCH[method](obs, alpha)


@lru_cache(maxsize=64)
def _bounds_for_all_k(method: BinomMethod, n: int, alpha: float, k_ratio: float) -> tuple[np.ndarray, np.ndarray]:
    """Interval bounds for every k = 0..n.

    Only k <= n/2 is solved; the rest follow from the mirror identity
    interval(n, k) = 1 - reversed(interval(n, n - k)).
    """
    lowers = np.empty(n + 1)
    uppers = np.empty(n + 1)
    for k in range(n // 2 + 1):
        interval = binom_interval(method, BinomObservation(n=n, k=k), alpha, k_ratio)
        lowers[k], uppers[k] = interval.lower, interval.upper
        if n - k != k:
            lowers[n - k], uppers[n - k] = 1.0 - interval.upper, 1.0 - interval.lower
    logger.debug("computed %s bounds for n=%d", method.value, n)
    lowers.flags.writeable = False
    uppers.flags.writeable = False
    return lowers, uppers


def interval_bounds(
    method: BinomMethod | str, n: int, alpha: float = 0.05, k_ratio: float = 8.0
) -> tuple[np.ndarray, np.ndarray]:
    """(lower, upper) arrays indexed by the success count k."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _bounds_for_all_k(BinomMethod(method), int(n), float(alpha), float(k_ratio))


def interval_lengths_by_phat(
    method: BinomMethod | str, n: int, alpha: float = 0.05, k_ratio: float = 8.0
) -> list[float]:
    """Interval length at each relative frequency k/n, k = 0..n."""
    lowers, uppers = interval_bounds(method, n, alpha, k_ratio)
    return (uppers - lowers).tolist()


def default_grid(points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def exact_coverage_binom(
    method: BinomMethod | str,
    n: int,
    p_grid=None,
    *,
    alpha: float = 0.05,
    k_ratio: float = 8.0,
) -> CoverageCurve:
    """Coverage probability and mean length by enumerating every outcome k.

    Coverage at p is the binomial probability of all k whose closed
    interval contains p.
    """
    method = BinomMethod(method)
    grid = default_grid() if p_grid is None else np.asarray(p_grid, dtype=float)
    if np.any((grid < 0.0) | (grid > 1.0)):
        raise DomainError("coverage grid values must lie in [0, 1]")
    lowers, uppers = interval_bounds(method, n, alpha, k_ratio)

    pmf = binom_pmf_table(n, grid)
    p = grid[:, None]
    covered = (lowers[None, :] <= p) & (p <= uppers[None, :])
    coverage = np.clip((pmf * covered).sum(axis=1), 0.0, 1.0)
    mean_length = np.maximum(pmf @ (uppers - lowers), 0.0)
    return CoverageCurve(
        method=method.value,
        x_axis=grid.tolist(),
        coverage=coverage.tolist(),
        mean_length=mean_length.tolist(),
        n_reps=0,
        mc_stderr=[0.0] * grid.size,
    )
