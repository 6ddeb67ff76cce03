"""Point estimators evaluated on samples, resamples and delete-one subsamples."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from confint.models.intervals import Sample
from confint.utils.errors import ConfintError, EstimatorError


@dataclass(frozen=True)
class Estimator:
    """A statistic of a sample.

    Batched estimators take a (rows, n) array and reduce along the last
    axis. Plain estimators receive one Sample at a time.
    """

    fn: Callable
    name: str = "custom"
    batched: bool = False

    def __call__(self, values: np.ndarray):
        values = np.asarray(values, dtype=float)
        if self.batched:
            return _as_result(self.fn(values))
        return _as_result(self.fn(Sample.of(values)))

    def over_rows(self, matrix: np.ndarray) -> np.ndarray:
        """Evaluate on every row; failures carry the row index."""
        matrix = np.asarray(matrix, dtype=float)
        if self.batched:
            try:
                return np.asarray(self.fn(matrix), dtype=float)
            except ConfintError:
                raise
            except Exception as e:
                raise EstimatorError(f"estimator '{self.name}' failed: {e}", index=self._failing_row(matrix)) from e
        results = []
        for i, row in enumerate(matrix):
            try:
                results.append(self.fn(Sample.of(row)))
            except Exception as e:
                raise EstimatorError(f"estimator '{self.name}' failed: {e}", index=i) from e
        return np.asarray(results, dtype=float)

    def _failing_row(self, matrix: np.ndarray) -> int | None:
        """First row the batched function rejects on its own; None if only the batch fails."""
        for i in range(matrix.shape[0]):
            try:
                self.fn(matrix[i : i + 1])
            except Exception:
                return i
        return None


def _as_result(value):
    arr = np.asarray(value, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


def as_estimator(estimator: Estimator | Callable) -> Estimator:
    if isinstance(estimator, Estimator):
        return estimator
    return Estimator(fn=estimator, name=getattr(estimator, "__name__", "custom"))


def _mean(values: np.ndarray) -> np.ndarray:
    return np.mean(values, axis=-1)


def _exp_rate(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return 1.0 / np.mean(values, axis=-1)


MEAN = Estimator(fn=_mean, name="mean", batched=True)
EXP_RATE = Estimator(fn=_exp_rate, name="exp-lambda", batched=True)

BUILTIN_ESTIMATORS = {MEAN.name: MEAN, EXP_RATE.name: EXP_RATE}
