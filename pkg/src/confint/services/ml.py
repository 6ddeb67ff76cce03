"""Maximum-likelihood fits with Hessian and jackknife standard deviations."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from confint.models.intervals import Interval, MlMethod, Sample
from confint.numerics.distributions import normal_quantile
from confint.numerics.optimize import minimize
from confint.services.estimators import Estimator, as_estimator
from confint.utils.errors import CurvatureError, DomainError, FitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LogLikModel:
    """Log-likelihood over a parameter vector; -inf outside the parameter domain."""

    name: str
    dim: int
    loglik: Callable[[np.ndarray, np.ndarray], float]
    start: Callable[[np.ndarray], np.ndarray]
    param_names: tuple[str, ...] = field(default=())
    # raises DomainError for data outside the model support
    check: Callable[[Sample], None] | None = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("model needs at least one parameter")


@dataclass
class MlFit:
    theta_hat: np.ndarray
    covariance: np.ndarray
    sigma: np.ndarray
    loglik: float
    model: str = ""


# ── models ────────────────────────────────────────────────────────────


def _exp_loglik(theta: np.ndarray, data: np.ndarray) -> float:
    lam = theta[0]
    if lam <= 0.0:
        return -math.inf
    return data.size * math.log(lam) - lam * float(np.sum(data))


def _exp_start(data: np.ndarray) -> np.ndarray:
    center = float(np.median(data))
    if center <= 0.0:
        center = float(np.mean(data))
    return np.array([1.0 / center])


def _check_exp_sample(sample: Sample) -> None:
    if np.any(sample.array < 0.0):
        raise DomainError("exponential data must be non-negative")
    if sample.mean <= 0.0:
        raise DomainError(f"exponential data need a positive mean, got {sample.mean}")


def exp_model() -> LogLikModel:
    """Exponential rate: l(lambda) = n ln(lambda) - lambda * sum(x)."""
    return LogLikModel(
        name="exponential",
        dim=1,
        loglik=_exp_loglik,
        start=_exp_start,
        param_names=("lambda",),
        check=_check_exp_sample,
    )


def _normal_loglik(theta: np.ndarray, data: np.ndarray) -> float:
    mu, var = theta
    if var <= 0.0:
        return -math.inf
    resid = data - mu
    return -0.5 * data.size * math.log(2.0 * math.pi * var) - float(resid @ resid) / (2.0 * var)


def _normal_start(data: np.ndarray) -> np.ndarray:
    var = float(np.var(data, ddof=1)) if data.size > 1 else 1.0
    return np.array([float(np.median(data)), var if var > 0.0 else 1.0])


def normal_model() -> LogLikModel:
    """Normal with parameters (mu, sigma^2)."""
    return LogLikModel(name="normal", dim=2, loglik=_normal_loglik, start=_normal_start, param_names=("mu", "sigma2"))


def exp_mle(sample: Sample) -> float:
    """lambda_hat = 1 / x_bar."""
    _check_exp_sample(sample)
    return 1.0 / sample.mean


def exp_sigma_hm(lambda_hat: float, n: int) -> float:
    """Hessian standard deviation of the exponential rate: lambda_hat / sqrt(n)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return lambda_hat / math.sqrt(n)


# ── Hessian method ────────────────────────────────────────────────────


def fit_ml(model: LogLikModel, sample: Sample) -> MlFit:
    """Maximize the log-likelihood; covariance is the inverse Hessian of -l at the optimum."""
    data = sample.array
    if model.check is not None:
        model.check(sample)

    def objective(theta: np.ndarray) -> float:
        return -model.loglik(theta, data)

    result = minimize(objective, model.start(data))
    if not result.converged:
        raise FitError(
            f"likelihood optimizer did not converge for the {model.name} model "
            f"after {result.iterations} iterations"
        )

    hessian = result.hessian
    try:
        np.linalg.cholesky(hessian)
    except np.linalg.LinAlgError as e:
        raise CurvatureError(
            f"Hessian of the negative log-likelihood is not positive definite at {result.argmin.tolist()}"
        ) from e
    try:
        covariance = np.linalg.inv(hessian)
    except np.linalg.LinAlgError as e:
        raise CurvatureError("Hessian of the negative log-likelihood is singular") from e
    covariance = 0.5 * (covariance + covariance.T)
    sigma = np.sqrt(np.clip(np.diag(covariance), 0.0, None))
    logger.info("%s fit: theta=%s sigma=%s", model.name, result.argmin.tolist(), sigma.tolist())
    return MlFit(
        theta_hat=result.argmin,
        covariance=covariance,
        sigma=sigma,
        loglik=-result.value,
        model=model.name,
    )


def hessian_ci(fit: MlFit, component: int = 0, alpha: float = 0.05) -> Interval:
    """theta_i +/- z * sigma_i."""
    if not 0 <= component < fit.theta_hat.size:
        raise DomainError(f"component {component} out of range for a {fit.theta_hat.size}-parameter fit")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    z = normal_quantile(1.0 - alpha / 2.0)
    center = float(fit.theta_hat[component])
    half = z * float(fit.sigma[component])
    return Interval(lower=center - half, upper=center + half, method=MlMethod.HESSIAN.value, level=1.0 - alpha)


# ── jackknife ─────────────────────────────────────────────────────────


def delete_one_matrix(values: np.ndarray) -> np.ndarray:
    """Row i holds the sample without observation i; shape (n, n - 1)."""
    values = np.asarray(values, dtype=float)
    n = values.size
    keep = ~np.eye(n, dtype=bool)
    return np.broadcast_to(values, (n, n))[keep].reshape(n, n - 1)


def delete_one_means(matrix: np.ndarray) -> np.ndarray:
    """Delete-one means of every row of a (rows, n) batch, shape (rows, n)."""
    n = matrix.shape[-1]
    return (matrix.sum(axis=-1, keepdims=True) - matrix) / (n - 1)


def jackknife_values(estimator: Estimator | Callable, sample: Sample | np.ndarray) -> np.ndarray:
    """Delete-one estimates theta_(i); shape (n,) or (n, t) for vector estimators."""
    values = sample.array if isinstance(sample, Sample) else np.asarray(sample, dtype=float)
    if values.size < 2:
        raise DomainError(f"jackknife needs at least 2 observations, got n={values.size}")
    return as_estimator(estimator).over_rows(delete_one_matrix(values))


def jackknife_spread(theta_i: np.ndarray, axis: int = 0) -> np.ndarray:
    """sqrt((n - 1) / n * sum((theta_i - theta_dot)^2)) along the delete-one axis."""
    n = theta_i.shape[axis]
    dev = theta_i - theta_i.mean(axis=axis, keepdims=True)
    return np.sqrt((n - 1) / n * np.sum(dev * dev, axis=axis))


def jackknife_sigma(estimator: Estimator | Callable, sample: Sample | np.ndarray):
    """Jackknife standard deviation; per component for vector-valued estimators."""
    spread = jackknife_spread(jackknife_values(estimator, sample))
    return float(spread) if np.ndim(spread) == 0 else spread


def jackknife_ci(
    estimator: Estimator | Callable,
    sample: Sample,
    alpha: float = 0.05,
    component: int = 0,
) -> Interval:
    """theta_hat +/- z * sigma_JK."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    estimator = as_estimator(estimator)
    theta_hat = np.atleast_1d(estimator(sample.array))
    sigma = np.atleast_1d(jackknife_sigma(estimator, sample))
    if not 0 <= component < theta_hat.size:
        raise DomainError(f"component {component} out of range for a {theta_hat.size}-component estimator")
    z = normal_quantile(1.0 - alpha / 2.0)
    center = float(theta_hat[component])
    half = z * float(sigma[component])
    return Interval(lower=center - half, upper=center + half, method=MlMethod.JACKKNIFE.value, level=1.0 - alpha)
