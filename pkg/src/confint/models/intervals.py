"""Interval data models and method tags."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BinomMethod(str, Enum):
    EXACT = "exact"
    WILSON = "wilson"
    WALD = "wald"
    LR = "lr"
    HPD = "hpd"


class MeanMethod(str, Enum):
    T = "t"
    Z = "z"
    LR_T = "lr-t"
    LR_NORMAL = "lr-normal"
    HPD_T = "hpd-t"
    HPD_NORMAL = "hpd-normal"


class MlMethod(str, Enum):
    HESSIAN = "hessian"
    JACKKNIFE = "jackknife"


class BootKind(str, Enum):
    PERCENTILE = "percentile"
    BASIC = "basic"
    BCA = "bca"

    @property
    def tag(self) -> str:
        """Method tag used in reports and coverage tables."""
        return f"boot-{self.value}"


class Calibration(str, Enum):
    T = "t"
    NORMAL = "normal"


# Support intervals carry K in the level slot instead of 1 - alpha
SUPPORT_METHODS = {BinomMethod.LR.value, MeanMethod.LR_T.value, MeanMethod.LR_NORMAL.value}


class Interval(BaseModel):
    """A closed interval [lower, upper] produced by one method."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    method: str
    level: float = Field(description="Nominal coverage 1 - alpha, or K for support intervals")

    @model_validator(mode="after")
    def _check_order(self) -> Interval:
        if not self.lower <= self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")
        return self

    @property
    def length(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, value: float) -> bool:
        """Closed-interval membership."""
        return self.lower <= value <= self.upper

    def retag(self, method: str) -> Interval:
        return self.model_copy(update={"method": method})


class BinomObservation(BaseModel):
    """n Bernoulli trials with k successes."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Trial count")
    k: int = Field(ge=0, description="Success count")

    @model_validator(mode="after")
    def _check_k(self) -> BinomObservation:
        if self.k > self.n:
            raise ValueError(f"k={self.k} exceeds n={self.n}")
        return self

    @property
    def p_hat(self) -> float:
        return self.k / self.n


class Sample(BaseModel):
    """Ordered observations x_1..x_n with derived mean and variance."""

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...] = Field(min_length=1)

    @classmethod
    def of(cls, values) -> Sample:
        return cls(values=tuple(float(v) for v in np.asarray(values, dtype=float).ravel()))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def mean(self) -> float:
        return float(np.mean(self.array))

    @property
    def variance(self) -> float:
        """Unbiased sample variance; undefined below two observations."""
        if self.n < 2:
            return math.nan
        return float(np.var(self.array, ddof=1))

    def __len__(self) -> int:
        return self.n


class IntervalReport(BaseModel):
    """One computed interval as emitted by the ci commands."""

    method: str
    lower: float
    upper: float
    level: float
    point_estimate: float
    n: int
    r: int | None = None
    seed: int | None = None

    @classmethod
    def from_interval(
        cls,
        interval: Interval,
        point_estimate: float,
        n: int,
        r: int | None = None,
        seed: int | None = None,
    ) -> IntervalReport:
        return cls(
            method=interval.method,
            lower=interval.lower,
            upper=interval.upper,
            level=interval.level,
            point_estimate=point_estimate,
            n=n,
            r=r,
            seed=seed,
        )

    def to_row(self) -> dict:
        return self.model_dump(exclude_none=True)
