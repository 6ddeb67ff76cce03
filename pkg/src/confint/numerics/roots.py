"""Bracketed scalar root finding (Brent's method)."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

from confint.models.numerics import Bracket
from confint.utils.errors import BracketError, ConvergenceError, NumericError

logger = logging.getLogger(__name__)

_EPS = 2.220446049250313e-16
DEFAULT_TOL = 1e-10
MAX_ITER = 200


def _evaluate(f: Callable[[float], float], x: float) -> float:
    value = float(f(x))
    if math.isnan(value):
        raise NumericError(f"function returned NaN at x={x}")
    return value


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> float:
    """Find x in bracket with f(x) = 0.

    Combines inverse quadratic interpolation and secant steps with a
    bisection fallback, so the bracket shrinks on every iteration.
    Infinite function values are allowed at the bracket ends; any step
    touching them falls back to bisection.

    Raises:
        BracketError: f(lo) and f(hi) have the same sign.
        ConvergenceError: max_iter iterations without reaching tol.
    """
    xpre, xcur = bracket.lo, bracket.hi
    fpre, fcur = _evaluate(f, xpre), _evaluate(f, xcur)
    if fpre == 0.0:
        return xpre
    if fcur == 0.0:
        return xcur
    if (fpre > 0.0) == (fcur > 0.0):
        raise BracketError(
            f"function does not change sign over [{bracket.lo}, {bracket.hi}] "
            f"(f(lo)={fpre:.6g}, f(hi)={fcur:.6g})"
        )

    xblk = fblk = 0.0
    spre = scur = 0.0
    for iteration in range(max_iter):
        if fpre != 0.0 and fcur != 0.0 and (fpre > 0.0) != (fcur > 0.0):
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur

        delta = 0.5 * (tol + 4.0 * _EPS * abs(xcur))
        sbis = 0.5 * (xblk - xcur)
        if fcur == 0.0 or abs(sbis) < delta:
            logger.debug("find_root converged after %d iterations at x=%r", iteration, xcur)
            return xcur

        interpolate = (
            abs(spre) > delta
            and abs(fcur) < abs(fpre)
            and math.isfinite(fpre)
            and math.isfinite(fblk)
        )
        if interpolate:
            if xpre == xblk:
                # secant
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                # inverse quadratic interpolation
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            if math.isfinite(stry) and 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre = scur = sbis
        else:
            spre = scur = sbis

        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0.0 else -delta
        fcur = _evaluate(f, xcur)

    raise ConvergenceError(
        f"find_root did not converge within {max_iter} iterations on [{bracket.lo}, {bracket.hi}]"
    )
