"""Reader for sample data files: one number per line, '#' starts a comment line."""

from __future__ import annotations

import logging
import math
from pathlib import Path

from confint.models.intervals import Sample
from confint.utils.errors import InputDataError

logger = logging.getLogger(__name__)


def parse_values(text: str, source: str = "<input>") -> list[float]:
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            value = float(line)
        except ValueError:
            raise InputDataError(f"{source}: line {lineno}: not a number: {line!r}") from None
        if not math.isfinite(value):
            raise InputDataError(f"{source}: line {lineno}: value is not finite: {line!r}")
        values.append(value)
    return values


def read_sample(path: str | Path) -> Sample:
    """Load a Sample from a data file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputDataError(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError) as e:
        raise InputDataError(f"{path}: cannot read file: {e}") from e

    values = parse_values(text, str(path))
    if not values:
        raise InputDataError(f"{path}: no numeric values found")
    logger.info("read %d values from %s", len(values), path)
    return Sample.of(values)
