"""Search-interval model for the root solvers."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, model_validator


class Bracket(BaseModel):
    """Closed search interval [lo, hi] handed to find_root."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float

    @model_validator(mode="after")
    def _check_order(self) -> Bracket:
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        return self

    @property
    def width(self) -> float:
        return self.hi - self.lo
