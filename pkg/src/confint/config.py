"""Configuration management for confint.

Loads run defaults from the environment (and .env) and experiment presets
from config/presets.yaml.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from confint.models.coverage import ExperimentConfig

logger = logging.getLogger(__name__)

PRESETS_FILE = Path("config") / "presets.yaml"

# Run-wide defaults a preset inherits unless it sets them itself
_INHERITED = ("seed", "workers", "chunk_size", "n_reps", "boot_n_reps", "boot_r", "grid_points")


class Settings(BaseSettings):
    """Run defaults, overridable through CONFINT_* environment variables."""

    model_config = SettingsConfigDict(env_prefix="CONFINT_", extra="ignore")

    seed: int = Field(default=20190415, ge=0, description="Default random seed")
    workers: int = Field(default=1, ge=1, description="Worker processes for simulations")
    chunk_size: int = Field(default=1000, ge=1, description="Replications per simulation chunk")
    n_reps: int = Field(default=100_000, ge=1, description="Outer replications for classical methods")
    boot_n_reps: int = Field(default=10_000, ge=1, description="Outer replications for bootstrap methods")
    boot_r: int = Field(default=1000, ge=2, description="Inner bootstrap replications")
    grid_points: int = Field(default=1001, ge=2, description="True-p grid size for exact coverage")
    presets_file: str = Field(default=str(PRESETS_FILE), description="Experiment presets, relative to the project root")


class Config(BaseModel):
    """Full application configuration."""

    settings: Settings
    presets: dict[str, dict[str, Any]] = Field(default_factory=dict)

    def get_preset(self, name: str) -> ExperimentConfig:
        """Build the named experiment, filling unset fields from settings."""
        key = name.lower()
        if key not in self.presets:
            available = ", ".join(self.preset_names) or "(none)"
            raise ValueError(f"Unknown preset '{name}'. Available: {available}")
        payload = {field: getattr(self.settings, field) for field in _INHERITED}
        payload.update(self.presets[key])
        return ExperimentConfig(**payload)

    @property
    def preset_names(self) -> list[str]:
        return sorted(self.presets.keys())


def _find_project_root() -> Path:
    """Walk up from this file to find the project root (where config/ lives)."""
    current = Path(__file__).resolve().parent
    for parent in [current, *current.parents]:
        if (parent / PRESETS_FILE).exists():
            return parent
    # Fallback: cwd
    return Path.cwd()


def _load_presets(path: Path) -> dict[str, dict[str, Any]]:
    """Load experiment presets; a missing file means no presets."""
    if not path.exists():
        logger.info("no presets file at %s", path)
        return {}
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    presets = {str(name).lower(): dict(body or {}) for name, body in data.get("presets", {}).items()}
    logger.info("loaded %d presets from %s", len(presets), path)
    return presets


@lru_cache(maxsize=1)
def get_config() -> Config:
    """Load and cache the full application configuration."""
    project_root = _find_project_root()

    # Load .env from project root if it exists
    env_path = project_root / ".env"
    if env_path.exists():
        load_dotenv(env_path)

    settings = Settings()
    presets_path = Path(settings.presets_file)
    if not presets_path.is_absolute():
        presets_path = project_root / presets_path
    return Config(settings=settings, presets=_load_presets(presets_path))
