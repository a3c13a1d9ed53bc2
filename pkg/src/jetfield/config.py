"""Scenario configuration: schema, loading and validation."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SUITES = ("identities", "roundtrip", "residuals", "gauge-check", "convergence", "triad-map", "multimomentum")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GridConfig(_Strict):
    m: int = Field(3, ge=2, le=4)
    N: list[int] = Field(default_factory=lambda: [8, 8, 8])
    h: Optional[list[float]] = None

    @model_validator(mode="before")
    @classmethod
    def _expand_n(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            m = data.get("m", 3)
            N = data.get("N", [8])
            if isinstance(N, int):
                N = [N]
            if isinstance(N, list) and len(N) == 1 and isinstance(m, int):
                N = N * m
            data["N"] = N
        return data

    @model_validator(mode="after")
    def _lengths(self):
        if len(self.N) != self.m:
            raise ValueError(f"N must list {self.m} entries")
        if any(n < 4 for n in self.N):
            raise ValueError("N must be at least 4 on every axis")
        if self.h is not None and (len(self.h) != self.m or any(x <= 0 for x in self.h)):
            raise ValueError("h must list m positive spacings")
        return self


class AlgebraConfig(_Strict):
    kind: Literal["so3", "so21", "custom"] = "so3"
    K: Optional[list[float]] = None
    C: Optional[list[list[list[float]]]] = None


class MetricConfig(_Strict):
    kind: Literal["flat", "smooth"] = "flat"
    signature: Optional[list[float]] = None
    seed: Optional[int] = None
    amplitude: float = Field(0.2, ge=0.0)


class FieldConfig(_Strict):
    family: Literal["random-smooth", "plane-wave", "pure-gauge"] = "random-smooth"
    seed: Optional[int] = None
    kmax: int = Field(1, ge=1)
    amplitude: float = Field(0.5, ge=0.0)


class GaugeConfig(_Strict):
    seed: Optional[int] = None
    kmax: int = Field(1, ge=1)
    amplitude: float = Field(0.3, ge=0.0)
    grids: list[int] = Field(default_factory=lambda: [16, 32, 64])


class ScenarioConfig(_Strict):
    grid: GridConfig = GridConfig()
    algebra: AlgebraConfig = AlgebraConfig()
    metric: MetricConfig = MetricConfig()
    field: FieldConfig = FieldConfig()
    gauge: GaugeConfig = GaugeConfig()
    scheme: Literal["order2", "order4"] = "order2"
    seed: int = 42
    samples: int = Field(20, ge=1)
    convergence_grids: list[int] = Field(default_factory=lambda: [8, 16, 32])
    tolerances: dict[str, float] = Field(default_factory=dict)
    suites: list[str]

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, v):
        if not v:
            raise ValueError("at least one suite must be selected")
        unknown = [s for s in v if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suites {unknown}; choose from {list(SUITES)}")
        return v

    @field_validator("convergence_grids")
    @classmethod
    def _grids(cls, v):
        if len(v) < 2 or any(n < 4 for n in v):
            raise ValueError("convergence needs at least two grids with N >= 4")
        return v

    def derived_seed(self, value: Optional[int], offset: int) -> int:
        """Per-component seed: explicit if set, else the global seed plus an offset."""
        return self.seed + offset if value is None else value


class ConfigError(ValueError):
    """Invalid configuration; the CLI maps this to exit status 2."""


def load_config(path: str | Path, overrides: Optional[dict] = None) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text) if path.suffix == ".json" else tomllib.loads(text)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return validate_config(data, overrides)


def validate_config(data: dict, overrides: Optional[dict] = None) -> ScenarioConfig:
    data = dict(data)
    for key, value in (overrides or {}).items():
        if key == "grid_N":
            grid = dict(data.get("grid", {}))
            grid["N"] = value
            data["grid"] = grid
        else:
            data[key] = value
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def schema_json() -> str:
    return json.dumps(ScenarioConfig.model_json_schema(), indent=2, sort_keys=True)
