"""YAML-backed settings for the Raman photon tools.

Usage:
    import config
    config.OPTIMIZE_GRID_STEP        # module-level constant, default if unset

Settings are read from ``config.yaml`` next to this file, or from the file
named by the ``RAMAN_CONFIG`` environment variable. A missing file means
every key takes its default.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "RAMAN_CONFIG"
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "config.yaml"


@dataclass(frozen=True)
class Settings:
    LOG_LEVEL: str = "WARNING"
    OUTPUT_FORMAT: str = "csv"
    FLOAT_DIGITS: int = 10
    OPTIMIZE_GRID_STEP: float = 0.05
    OPTIMIZE_TOLERANCE: float = 1e-4
    ORACLE_TOLERANCE: float = 1e-8
    ORACLE_N_MAX: int = 1
    SWEEP_WORKERS: int = 1
    HERMITICITY_TOLERANCE: float = 1e-10
    NEGATIVE_EIGENVALUE_TOLERANCE: float = 1e-10


def _coerce(name: str, expected: type, value):
    # YAML gives ints for "1" and floats for "1.0e-8"; accept int where float is wanted
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if expected is float and isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    if not isinstance(value, expected) or isinstance(value, bool):
        raise ValueError(f"config key {name} must be {expected.__name__}, got {value!r}")
    return value


def load(path: str | os.PathLike | None = None) -> Settings:
    """Read settings from a YAML file; missing file or keys fall back to defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or DEFAULT_CONFIG_PATH
    path = Path(path)
    settings = Settings()
    if not path.is_file():
        return settings

    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: top level must be a mapping")

    types = {f.name: f.type for f in fields(Settings)}
    known = {"str": str, "int": int, "float": float}
    updates = {}
    for key, value in raw.items():
        if key not in types:
            logger.warning("Ignoring unknown config key %s in %s", key, path)
            continue
        updates[key] = _coerce(key, known[types[key]], value)

    settings = replace(settings, **updates)
    if settings.OUTPUT_FORMAT not in ("csv", "json"):
        raise ValueError(f"config key OUTPUT_FORMAT must be csv or json, got {settings.OUTPUT_FORMAT!r}")
    return settings


SETTINGS = load()

LOG_LEVEL = SETTINGS.LOG_LEVEL
OUTPUT_FORMAT = SETTINGS.OUTPUT_FORMAT
FLOAT_DIGITS = SETTINGS.FLOAT_DIGITS
OPTIMIZE_GRID_STEP = SETTINGS.OPTIMIZE_GRID_STEP
OPTIMIZE_TOLERANCE = SETTINGS.OPTIMIZE_TOLERANCE
ORACLE_TOLERANCE = SETTINGS.ORACLE_TOLERANCE
ORACLE_N_MAX = SETTINGS.ORACLE_N_MAX
SWEEP_WORKERS = SETTINGS.SWEEP_WORKERS
HERMITICITY_TOLERANCE = SETTINGS.HERMITICITY_TOLERANCE
NEGATIVE_EIGENVALUE_TOLERANCE = SETTINGS.NEGATIVE_EIGENVALUE_TOLERANCE
