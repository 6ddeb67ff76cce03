"""Derivative-free minimization (Nelder-Mead) with a finite-difference Hessian."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from confint.utils.errors import CurvatureError, DomainError, NumericError

logger = logging.getLogger(__name__)

# reflection, expansion, contraction, shrink
_RHO, _CHI, _PSI, _SIGMA = 1.0, 2.0, 0.5, 0.5
_NONZERO_STEP = 0.05
_ZERO_STEP = 0.00025
_FD_STEP = np.finfo(float).eps ** (1.0 / 3.0)


@dataclass
class MinimizeResult:
    argmin: np.ndarray
    value: float
    hessian: np.ndarray
    converged: bool
    iterations: int = 0
    evaluations: int = 0


class _Objective:
    """Counts evaluations; +inf marks an infeasible point, NaN is an error."""

    def __init__(self, f: Callable[[np.ndarray], float]) -> None:
        self.f = f
        self.calls = 0

    def __call__(self, x: np.ndarray) -> float:
        self.calls += 1
        value = float(self.f(np.array(x, dtype=float)))
        if math.isnan(value):
            raise NumericError(f"objective returned NaN at {np.asarray(x).tolist()}")
        return value


def _initial_simplex(x0: np.ndarray) -> np.ndarray:
    dim = x0.size
    sim = np.empty((dim + 1, dim))
    sim[0] = x0
    for i in range(dim):
        y = x0.copy()
        y[i] = (1.0 + _NONZERO_STEP) * y[i] if y[i] != 0.0 else _ZERO_STEP
        sim[i + 1] = y
    return sim


def finite_difference_hessian(f: Callable[[np.ndarray], float], x: np.ndarray) -> np.ndarray:
    """Central-difference Hessian with step cbrt(eps) * max(1, |x_i|), symmetrized."""
    x = np.asarray(x, dtype=float)
    dim = x.size
    h = _FD_STEP * np.maximum(1.0, np.abs(x))
    f0 = f(x)
    hess = np.empty((dim, dim))

    def at(*shifts: tuple[int, float]) -> float:
        y = x.copy()
        for i, s in shifts:
            y[i] += s * h[i]
        value = f(y)
        if not math.isfinite(value):
            raise CurvatureError(f"objective is not finite near {x.tolist()}; curvature cannot be estimated")
        return value

    for i in range(dim):
        hess[i, i] = (at((i, 1.0)) - 2.0 * f0 + at((i, -1.0))) / (h[i] * h[i])
        for j in range(i + 1, dim):
            hess[i, j] = (
                at((i, 1.0), (j, 1.0))
                - at((i, 1.0), (j, -1.0))
                - at((i, -1.0), (j, 1.0))
                + at((i, -1.0), (j, -1.0))
            ) / (4.0 * h[i] * h[j])
            hess[j, i] = hess[i, j]
    return 0.5 * (hess + hess.T)


def minimize(
    f: Callable[[np.ndarray], float],
    x0,
    xatol: float = 1e-7,
    fatol: float = 1e-12,
    max_iter: int | None = None,
) -> MinimizeResult:
    """Minimize f by the Nelder-Mead simplex method, then estimate the Hessian.

    Tolerances are relative to max(1, |x|) and max(1, |f|) at the best vertex.
    Non-convergence within max_iter is reported through converged=False.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    objective = _Objective(f)
    if not math.isfinite(objective(x0)):
        raise DomainError(f"objective must be finite at the start point {x0.tolist()}")
    dim = x0.size
    max_iter = max_iter or 1000 * dim

    sim = _initial_simplex(x0)
    fsim = np.array([objective(v) for v in sim])
    order = np.argsort(fsim, kind="stable")
    sim, fsim = sim[order], fsim[order]

    converged = False
    iterations = 0
    while iterations < max_iter:
        x_scale = max(1.0, float(np.max(np.abs(sim[0]))))
        f_scale = max(1.0, abs(fsim[0]))
        if (
            np.max(np.abs(sim[1:] - sim[0])) <= xatol * x_scale
            and np.max(np.abs(fsim[1:] - fsim[0])) <= fatol * f_scale
        ):
            converged = True
            break
        iterations += 1

        centroid = sim[:-1].mean(axis=0)
        xr = (1.0 + _RHO) * centroid - _RHO * sim[-1]
        fxr = objective(xr)
        shrink = False
        if fxr < fsim[0]:
            xe = (1.0 + _RHO * _CHI) * centroid - _RHO * _CHI * sim[-1]
            fxe = objective(xe)
            if fxe < fxr:
                sim[-1], fsim[-1] = xe, fxe
            else:
                sim[-1], fsim[-1] = xr, fxr
        elif fxr < fsim[-2]:
            sim[-1], fsim[-1] = xr, fxr
        elif fxr < fsim[-1]:
            xc = (1.0 + _PSI * _RHO) * centroid - _PSI * _RHO * sim[-1]
            fxc = objective(xc)
            if fxc <= fxr:
                sim[-1], fsim[-1] = xc, fxc
            else:
                shrink = True
        else:
            xcc = (1.0 - _PSI) * centroid + _PSI * sim[-1]
            fxcc = objective(xcc)
            if fxcc < fsim[-1]:
                sim[-1], fsim[-1] = xcc, fxcc
            else:
                shrink = True

        if shrink:
            for j in range(1, dim + 1):
                sim[j] = sim[0] + _SIGMA * (sim[j] - sim[0])
                fsim[j] = objective(sim[j])

        order = np.argsort(fsim, kind="stable")
        sim, fsim = sim[order], fsim[order]

    if converged:
        logger.debug("Nelder-Mead converged in %d iterations (%d evaluations)", iterations, objective.calls)
    else:
        logger.warning("Nelder-Mead stopped after %d iterations without converging", iterations)

    argmin = sim[0].copy()
    hessian = finite_difference_hessian(objective, argmin)
    return MinimizeResult(
        argmin=argmin,
        value=float(fsim[0]),
        hessian=hessian,
        converged=converged,
        iterations=iterations,
        evaluations=objective.calls,
    )
