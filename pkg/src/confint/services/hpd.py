"""Highest-posterior-density intervals from a posterior quantile function.

The HPD interval of mass 1 - alpha is the shortest interval
[q(beta), q(beta + 1 - alpha)] over the lower-tail mass beta in [0, alpha].
Only the quantile function is needed, never the density, so posteriors
whose mode sits on a domain boundary are handled without special cases.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np

from confint.models.intervals import Interval
from confint.utils.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

QuantileFn = Callable[[float], float]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_MONOTONE_POINTS = np.linspace(0.01, 0.99, 50)
BETA_TOL = 1e-10
MAX_ITER = 200


def _check_monotone(quantile: QuantileFn) -> None:
    values = np.array([quantile(float(p)) for p in _MONOTONE_POINTS])
    if np.any(np.diff(values) < -1e-12 * np.maximum(1.0, np.abs(values[1:]))):
        raise DomainError("quantile function is not monotone nondecreasing")


def _width(quantile: QuantileFn, alpha: float) -> Callable[[float], float]:
    def width(beta: float) -> float:
        return quantile(min(1.0, beta + 1.0 - alpha)) - quantile(beta)

    return width


def _end_width(width: Callable[[float], float], beta: float) -> float:
    """Width at an end of [0, alpha]; an unbounded quantile there never wins."""
    try:
        value = width(beta)
    except DomainError:
        return math.inf
    return value if math.isfinite(value) else math.inf


def hpd_lower_mass(quantile: QuantileFn, alpha: float, tol: float = BETA_TOL) -> float:
    """Lower-tail mass beta* of the shortest interval, by golden-section search.

    The interior optimum is compared against both ends of [0, alpha] so a
    monotone density (mode at a boundary) returns exactly 0 or alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    _check_monotone(quantile)
    width = _width(quantile, alpha)

    a, b = 0.0, alpha
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    wc, wd = width(c), width(d)
    for _ in range(MAX_ITER):
        if b - a <= tol:
            break
        if wc <= wd:
            b, d, wd = d, c, wc
            c = b - _INV_PHI * (b - a)
            wc = width(c)
        else:
            a, c, wc = c, d, wd
            d = a + _INV_PHI * (b - a)
            wd = width(d)
    else:
        raise ConvergenceError(f"golden-section search did not converge within {MAX_ITER} iterations")

    interior = 0.5 * (a + b)
    candidates = [(width(interior), interior), (_end_width(width, 0.0), 0.0), (_end_width(width, alpha), alpha)]
    best_width, best_beta = min(candidates, key=lambda item: item[0])
    logger.debug("HPD search: beta*=%.12g width=%.12g", best_beta, best_width)
    return best_beta


def hpd_interval(quantile: QuantileFn, alpha: float, method: str = "hpd") -> Interval:
    """Shortest interval holding posterior mass 1 - alpha."""
    beta = hpd_lower_mass(quantile, alpha)
    lower = quantile(beta)
    upper = quantile(min(1.0, beta + 1.0 - alpha))
    return Interval(lower=lower, upper=upper, method=method, level=1.0 - alpha)
