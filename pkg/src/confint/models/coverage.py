"""Coverage experiment models."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator


class Family(str, Enum):
    BINOM_EXACT = "binom-exact"
    MEAN_CUBIC = "mean-cubic"
    EXP_ML = "exp-ml"
    BINOM_LENGTHS = "binom-lengths"


# Methods each family accepts
FAMILY_METHODS: dict[Family, list[str]] = {
    Family.BINOM_EXACT: ["exact", "wilson", "wald", "lr", "hpd"],
    Family.BINOM_LENGTHS: ["exact", "wilson", "wald", "lr", "hpd"],
    Family.MEAN_CUBIC: ["t", "z", "lr-t", "lr-normal", "boot-percentile", "boot-basic", "boot-bca"],
    Family.EXP_ML: ["hessian", "jackknife", "boot-percentile", "boot-basic", "boot-bca"],
}

# True mean of the density 3x^2 on [0, 1]
CUBIC_MEAN = 0.75

CURVE_COLUMNS = ["x", "method", "coverage", "mean_length", "mc_stderr", "n_reps"]
DETAIL_COLUMNS = ["mean_estimate", "corr_error_sigma"]


class ExperimentConfig(BaseModel):
    """Parameters of one coverage experiment."""

    family: Family
    methods: list[str] = Field(default_factory=list)
    n_values: list[int] = Field(default_factory=lambda: [5, 10, 20, 50, 100])
    n_reps: int = Field(default=100_000, ge=1)
    boot_n_reps: int | None = Field(default=None, ge=1, description="Outer replications for bootstrap methods")
    boot_r: int = Field(default=1000, ge=2, description="Inner bootstrap replications")
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)
    k_ratio: float = Field(default=8.0, ge=1.0)
    seed: int = Field(default=20190415, ge=0)
    true_param: float | None = None
    grid_points: int = Field(default=1001, ge=2)
    workers: int = Field(default=1, ge=1)
    chunk_size: int = Field(default=1000, ge=1)

    @field_validator("n_values")
    @classmethod
    def _check_n_values(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("n_values must not be empty")
        return v

    @model_validator(mode="after")
    def _check_family(self) -> ExperimentConfig:
        allowed = FAMILY_METHODS[self.family]
        if not self.methods:
            self.methods = list(allowed)
        unknown = [m for m in self.methods if m not in allowed]
        if unknown:
            raise ValueError(
                f"methods {unknown} not valid for {self.family.value}; choose from {', '.join(allowed)}"
            )
        # the binomial families take trial counts, the simulations need n >= 2
        min_n = 1 if self.family in (Family.BINOM_EXACT, Family.BINOM_LENGTHS) else 2
        if any(n < min_n for n in self.n_values):
            raise ValueError(f"every n must be >= {min_n} for {self.family.value}")
        if self.family == Family.BINOM_EXACT and len(self.n_values) != 1:
            raise ValueError("binom-exact takes a single n; its x axis is the true p")
        if self.family == Family.EXP_ML and self.true_param is not None and self.true_param <= 0:
            raise ValueError("true_param (lambda) must be positive")
        return self

    @property
    def truth(self) -> float:
        """True parameter the simulated intervals should cover."""
        if self.true_param is not None:
            return self.true_param
        if self.family == Family.EXP_ML:
            return 2.0
        return CUBIC_MEAN

    @property
    def outer_reps_boot(self) -> int:
        return self.boot_n_reps if self.boot_n_reps is not None else self.n_reps


class CoveragePoint(BaseModel):
    """Coverage estimate of one method at one abscissa value."""

    x: float
    method: str
    coverage: float = Field(ge=0.0, le=1.0)
    mean_length: float = Field(ge=0.0)
    mc_stderr: float = Field(ge=0.0)
    n_reps: int = Field(ge=0)
    mean_estimate: float | None = None
    corr_error_sigma: float | None = None


class CoverageCurve(BaseModel):
    """Per-abscissa coverage and mean length of one method."""

    method: str
    x_axis: list[float]
    coverage: list[float]
    mean_length: list[float]
    n_reps: int = Field(ge=0, description="Replications per point; 0 for exact enumeration")
    mc_stderr: list[float]
    mean_estimate: list[float] | None = None
    corr_error_sigma: list[float | None] | None = None

    @model_validator(mode="after")
    def _check_lengths(self) -> CoverageCurve:
        size = len(self.x_axis)
        for name in ("coverage", "mean_length", "mc_stderr"):
            if len(getattr(self, name)) != size:
                raise ValueError(f"{name} has {len(getattr(self, name))} points, expected {size}")
        return self

    def points(self) -> list[CoveragePoint]:
        rows = []
        for i, x in enumerate(self.x_axis):
            rows.append(
                CoveragePoint(
                    x=x,
                    method=self.method,
                    coverage=self.coverage[i],
                    mean_length=self.mean_length[i],
                    mc_stderr=self.mc_stderr[i],
                    n_reps=self.n_reps,
                    mean_estimate=self.mean_estimate[i] if self.mean_estimate else None,
                    corr_error_sigma=self.corr_error_sigma[i] if self.corr_error_sigma else None,
                )
            )
        return rows

    def at(self, x: float) -> CoveragePoint:
        """Point at abscissa x (exact match)."""
        for point in self.points():
            if point.x == x:
                return point
        raise KeyError(f"no point at x={x} for {self.method}")


def curves_to_rows(curves: list[CoverageCurve], details: bool = False) -> list[dict]:
    """Flatten curves into CSV rows sorted by (method, x)."""
    columns = CURVE_COLUMNS + (DETAIL_COLUMNS if details else [])
    rows = [p.model_dump(include=set(columns)) for c in curves for p in c.points()]
    rows.sort(key=lambda r: (r["method"], r["x"]))
    return rows
