"""CDFs, densities and quantiles of the binomial, normal, Student-t and beta distributions."""

from __future__ import annotations

import math

import numpy as np

from confint.models.numerics import Bracket
from confint.numerics.roots import find_root
from confint.numerics.special import log_gamma, reg_inc_beta
from confint.utils.errors import ConvergenceError, DomainError

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)

# Rational approximation of the normal quantile (Acklam), refined by Halley steps
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _check_probability(q: float, name: str) -> None:
    if not 0.0 < q < 1.0:
        raise DomainError(f"{name} needs a probability strictly inside (0, 1), got {q}")


def _check_df(df: float) -> None:
    if not (math.isfinite(df) and df >= 1):
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")


# ── binomial ──────────────────────────────────────────────────────────


def _check_binom(k: int, n: int, p: float) -> None:
    if n < 1:
        raise DomainError(f"binomial needs n >= 1, got n={n}")
    if not 0 <= k <= n:
        raise DomainError(f"binomial count k={k} outside [0, {n}]")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binomial probability p={p} outside [0, 1]")


def binom_pmf(k: int, n: int, p: float) -> float:
    """P(K = k) for K ~ Binomial(n, p)."""
    _check_binom(k, n, p)
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    log_coef = log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0)
    return math.exp(log_coef + k * math.log(p) + (n - k) * math.log1p(-p))


def binom_pmf_table(n: int, p: np.ndarray) -> np.ndarray:
    """Binomial pmf for every k = 0..n at each p; shape (len(p), n + 1)."""
    p = np.asarray(p, dtype=float).reshape(-1, 1)
    k = np.arange(n + 1, dtype=float)
    log_coef = np.array(
        [log_gamma(n + 1.0) - log_gamma(j + 1.0) - log_gamma(n - j + 1.0) for j in range(n + 1)]
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        success = np.where(k == 0, 0.0, k * np.log(p))
        failure = np.where(k == n, 0.0, (n - k) * np.log1p(-p))
    return np.exp(log_coef + success + failure)


def binom_cdf(k: int, n: int, p: float) -> float:
    """P(K <= k) for K ~ Binomial(n, p).

    Evaluated as I_{1-p}(n - k, k + 1), the complement form of
    1 - I_p(k + 1, n - k), so small upper tails do not cancel.
    """
    _check_binom(k, n, p)
    if k == n:
        return 1.0
    return reg_inc_beta(n - k, k + 1.0, 1.0 - p)


# ── normal ────────────────────────────────────────────────────────────


def normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT2PI


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def _lower_normal_quantile(p: float) -> float:
    """Quantile for p in (0, 0.5]."""
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / (
            (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        )
    else:
        q = p - 0.5
        r = q * q
        x = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / (
            ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        )
    for _ in range(2):
        e = normal_cdf(x) - p
        u = e * _SQRT2PI * math.exp(0.5 * x * x)
        x -= u / (1.0 + 0.5 * x * u)
    return x


def normal_quantile(q: float) -> float:
    """Inverse of the standard normal CDF."""
    _check_probability(q, "normal_quantile")
    if q == 0.5:
        return 0.0
    if q > 0.5:
        # 1 - q is exact here
        return -_lower_normal_quantile(1.0 - q)
    return _lower_normal_quantile(q)


# ── Student t ─────────────────────────────────────────────────────────


def t_cdf(x: float, df: float) -> float:
    """Student-t CDF with df degrees of freedom."""
    _check_df(df)
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    x2 = x * x
    if x2 < df:
        # central form keeps precision near zero
        half = 0.5 * reg_inc_beta(0.5, 0.5 * df, x2 / (df + x2))
        return 0.5 + half if x > 0 else 0.5 - half
    tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + x2))
    return 1.0 - tail if x > 0 else tail


def t_quantile(q: float, df: float) -> float:
    """Inverse Student-t CDF, by root solving on the upper tail.

    The normal quantile is a lower bound for |t| at the same tail mass;
    the upper end of the bracket is doubled until it encloses the root.
    """
    _check_probability(q, "t_quantile")
    _check_df(df)
    if q == 0.5:
        return 0.0
    tail = 1.0 - q if q > 0.5 else q

    def excess(t: float) -> float:
        return t_cdf(-t, df) - tail

    lo = -normal_quantile(tail)
    if excess(lo) <= 0.0:
        root = lo
    else:
        hi = max(2.0 * lo, 1.0)
        for _ in range(200):
            if excess(hi) <= 0.0:
                break
            lo, hi = hi, 2.0 * hi
        else:
            raise ConvergenceError(f"could not bracket t quantile for q={q}, df={df}")
        root = find_root(excess, Bracket(lo=lo, hi=hi), tol=1e-12 * max(1.0, lo))
    return root if q > 0.5 else -root


# ── beta ──────────────────────────────────────────────────────────────


def beta_quantile(q: float, a: float, b: float) -> float:
    """x in [0, 1] with I_x(a, b) = q."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"beta_quantile needs a, b > 0, got a={a}, b={b}")
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"beta_quantile needs q in [0, 1], got {q}")
    if q == 0.0:
        return 0.0
    if q == 1.0:
        return 1.0
    return find_root(lambda x: reg_inc_beta(a, b, x) - q, Bracket(lo=0.0, hi=1.0), tol=1e-14)
