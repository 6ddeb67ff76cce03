"""Shared fixtures for the confint test suite."""
from __future__ import annotations

import numpy as np
import pytest

from confint.config import Config, Settings
from confint.models.intervals import Sample
from confint.numerics.rng import RngStream


@pytest.fixture
def fake_settings() -> Settings:
    return Settings(
        seed=12345,
        workers=1,
        chunk_size=500,
        n_reps=2000,
        boot_n_reps=200,
        boot_r=200,
        grid_points=101,
        presets_file="config/presets.yaml",
    )


@pytest.fixture
def fake_presets() -> dict[str, dict]:
    return {
        "binom-coverage": {"family": "binom-exact", "n_values": [20], "methods": ["exact", "wald"]},
        "mean-cubic": {"family": "mean-cubic", "n_values": [5, 10], "methods": ["t", "z"]},
        "binom-lengths": {"family": "binom-lengths", "n_values": [10, 20], "methods": ["exact", "wald"]},
    }


@pytest.fixture
def fake_config(fake_settings, fake_presets) -> Config:
    return Config(settings=fake_settings, presets=fake_presets)


@pytest.fixture
def rng() -> RngStream:
    return RngStream(20190415, 7)


@pytest.fixture
def skewed_sample() -> Sample:
    """Twenty exponential draws: right-skewed, fixed."""
    gen = np.random.default_rng(2024)
    return Sample.of(np.round(gen.exponential(0.5, size=20), 6))


@pytest.fixture
def exp_sample_10() -> Sample:
    return Sample.of([0.12, 0.45, 0.03, 0.91, 0.27, 0.66, 0.08, 1.42, 0.35, 0.19])


@pytest.fixture
def data_file(tmp_path):
    """Write values (one per line) to a temp file and return its path."""

    def _write(lines: list[str], name: str = "data.txt", newline: str = "\n"):
        path = tmp_path / name
        path.write_bytes(newline.join(lines).encode("utf-8") + newline.encode("utf-8"))
        return path

    return _write
