"""Scenario configuration: JSON with explicit units, validated at ingest.

Every physical quantity in a config carries a ``{"value": ..., "units": ...}``
object (or a ``{"start", "stop", "count", "units"}`` range for sweep axes)
and is converted to SI here, so the computation modules never see units.
Dimensionless fields (couplings, counts, SNR, the omega*T product) are plain
numbers.
"""

import json
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import (BaseModel, ConfigDict, Field, ValidationError,
                      field_validator, model_validator)

from .constants import GEV_PER_CM3_TO_SI, STANDARD_GRAVITY
from .errors import ScenarioError

TWO_PI = 6.283185307179586476925287

ANGULAR_FREQUENCY_UNITS = {"rad/s": 1.0, "Hz": TWO_PI}  # Hz = cycles/s -> rad/s
LENGTH_UNITS = {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "km": 1e3}
TIME_UNITS = {"s": 1.0, "ms": 1e-3, "min": 60.0, "h": 3600.0, "day": 86400.0}
VELOCITY_UNITS = {"m/s": 1.0, "cm/s": 1e-2, "km/s": 1e3}
ACCELERATION_UNITS = {"m/s^2": 1.0}
ENERGY_DENSITY_UNITS = {"J/m^3": 1.0, "GeV/cm^3": GEV_PER_CM3_TO_SI}
PHASE_UNITS = {"rad": 1.0}
DIMENSIONLESS_UNITS = {"rad": 1.0, "1": 1.0, "": 1.0}


class GridRange(BaseModel):
    """Evenly spaced sweep axis, already converted to SI."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    count: int = Field(ge=2)

    def values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]


def _convert(raw, units: dict, dimension: str) -> float:
    try:
        value = float(raw["value"])
        unit = raw["units"]
    except (KeyError, TypeError, ValueError):
        raise ValueError(
            f"expected an object with 'value' and 'units' for this {dimension}")
    if unit not in units:
        allowed = ", ".join(sorted(u for u in units if u))
        raise ValueError(f"unsupported {dimension} units {unit!r}; expected one of: {allowed}")
    return value * units[unit]


def parse_quantity(raw, units: dict, dimension: str, allow_range: bool = False,
                   allow_bare: bool = False):
    """Convert a config quantity (or range) to SI; reject unknown units."""
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        if allow_bare:
            return float(raw)
        raise ValueError(
            f"bare numbers are not allowed for this {dimension}; "
            "write {\"value\": ..., \"units\": ...}")
    if isinstance(raw, dict) and {"start", "stop", "count"} <= raw.keys():
        if not allow_range:
            raise ValueError(f"a range is not allowed for this {dimension}")
        unit = raw.get("units", "" if allow_bare else None)
        if unit is None:
            raise ValueError(f"range for this {dimension} must declare units")
        if unit not in units:
            allowed = ", ".join(sorted(u for u in units if u))
            raise ValueError(
                f"unsupported {dimension} units {unit!r}; expected one of: {allowed}")
        factor = units[unit]
        return GridRange(start=float(raw["start"]) * factor,
                         stop=float(raw["stop"]) * factor,
                         count=int(raw["count"]))
    if isinstance(raw, dict):
        return _convert(raw, units, dimension)
    raise ValueError(f"cannot interpret {raw!r} as a {dimension}")


class TransitionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega_atom: float   # rad/s after ingest

    @field_validator("omega_atom", mode="before")
    @classmethod
    def _omega_atom(cls, v):
        return parse_quantity(v, ANGULAR_FREQUENCY_UNITS, "transition frequency")


class DmConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega: Union[GridRange, float]
    rho_dm: float = 0.4 * GEV_PER_CM3_TO_SI   # J/m^3; local density default
    eps_bar: float = Field(default=1.0, ge=0.0)

    @field_validator("omega", mode="before")
    @classmethod
    def _omega(cls, v):
        return parse_quantity(v, ANGULAR_FREQUENCY_UNITS, "DM frequency", allow_range=True)

    @field_validator("rho_dm", mode="before")
    @classmethod
    def _rho(cls, v):
        return parse_quantity(v, ENERGY_DENSITY_UNITS, "energy density")

    @model_validator(mode="after")
    def _positive(self):
        if isinstance(self.omega, float) and self.omega <= 0.0:
            raise ValueError("DM frequency must be positive")
        if isinstance(self.omega, GridRange) and self.omega.start <= 0.0:
            raise ValueError("DM frequency range must be positive")
        if self.rho_dm < 0.0:
            raise ValueError("DM energy density must be non-negative")
        return self


class SchemeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    variant: Literal["minus", "plus"]
    Q: Union[int, List[int]] = 1
    N: int = Field(default=1, ge=1)
    omega_T: Union[GridRange, float, None] = None   # dimensionless; None = resonance

    @field_validator("Q", mode="before")
    @classmethod
    def _q(cls, v):
        if isinstance(v, dict) and {"start", "stop", "count"} <= v.keys():
            values = np.linspace(float(v["start"]), float(v["stop"]), int(v["count"]))
            rounded = [int(round(x)) for x in values]
            if any(abs(x - r) > 1e-9 for x, r in zip(values, rounded)):
                raise ValueError("Q range must produce integer diamond counts")
            return rounded
        return v

    @field_validator("omega_T", mode="before")
    @classmethod
    def _omega_t(cls, v):
        if v is None:
            return None
        return parse_quantity(v, DIMENSIONLESS_UNITS, "omega*T product",
                              allow_range=True, allow_bare=True)

    @model_validator(mode="after")
    def _check(self):
        qs = [self.Q] if isinstance(self.Q, int) else self.Q
        if not qs:
            raise ValueError("Q list must not be empty")
        if any(q < 1 for q in qs):
            raise ValueError("diamond counts must be >= 1")
        if isinstance(self.omega_T, float) and not 0.0 < self.omega_T:
            raise ValueError("omega*T must be positive")
        return self

    def q_values(self) -> List[int]:
        return [self.Q] if isinstance(self.Q, int) else list(self.Q)


class GeometryConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    B: Union[GridRange, float]
    h: Union[float, Literal["optimize"]]
    v_r: float = 0.0
    g: Union[float, Literal["derived"]] = STANDARD_GRAVITY

    @field_validator("B", mode="before")
    @classmethod
    def _b(cls, v):
        return parse_quantity(v, LENGTH_UNITS, "baseline", allow_range=True)

    @field_validator("h", mode="before")
    @classmethod
    def _h(cls, v):
        if v == "optimize":
            return v
        return parse_quantity(v, LENGTH_UNITS, "fountain height")

    @field_validator("v_r", mode="before")
    @classmethod
    def _vr(cls, v):
        return parse_quantity(v, VELOCITY_UNITS, "recoil velocity")

    @field_validator("g", mode="before")
    @classmethod
    def _g(cls, v):
        if v == "derived":
            return v
        return parse_quantity(v, ACCELERATION_UNITS, "gravity")

    @model_validator(mode="after")
    def _check(self):
        b_min = self.B.start if isinstance(self.B, GridRange) else self.B
        if b_min <= 0.0:
            raise ValueError("baseline must be positive")
        if isinstance(self.h, float) and not 0.0 < self.h < b_min:
            raise ValueError("height must satisfy 0 < h < B for every baseline")
        if self.v_r < 0.0:
            raise ValueError("recoil velocity must be non-negative")
        if isinstance(self.g, float) and self.g <= 0.0:
            raise ValueError("gravity must be positive")
        return self


class NoiseConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["fixed", "shot", "quantum"]
    delta_phi_s: Optional[float] = None    # rad
    n_at: Optional[float] = None
    T_int: Optional[float] = None          # s
    nu: Optional[float] = None             # repetitions; derived from T_int if absent
    snr: float = Field(default=1.0, gt=0.0)

    @field_validator("delta_phi_s", mode="before")
    @classmethod
    def _dps(cls, v):
        if v is None:
            return None
        return parse_quantity(v, PHASE_UNITS, "phase noise", allow_bare=True)

    @field_validator("T_int", mode="before")
    @classmethod
    def _tint(cls, v):
        if v is None:
            return None
        return parse_quantity(v, TIME_UNITS, "integration time")

    @model_validator(mode="after")
    def _check(self):
        if self.kind == "fixed":
            if self.delta_phi_s is None or self.delta_phi_s <= 0.0:
                raise ValueError("fixed noise requires delta_phi_s > 0")
            if self.n_at is not None or self.T_int is not None or self.nu is not None:
                raise ValueError("fixed noise does not use n_at/T_int/nu")
        else:
            if self.delta_phi_s is not None:
                raise ValueError(f"{self.kind} noise does not use delta_phi_s")
            if self.n_at is None or self.n_at < 1:
                raise ValueError(f"{self.kind} noise requires n_at >= 1")
            if self.T_int is None and self.nu is None:
                raise ValueError(f"{self.kind} noise requires T_int (or nu)")
            if self.T_int is not None and self.T_int <= 0.0:
                raise ValueError("integration time must be positive")
            if self.nu is not None and self.nu < 1.0:
                raise ValueError("repetition count must be >= 1")
        return self


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["csv", "json"] = "json"
    path: Optional[str] = None


class OracleConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    samples: int = Field(default=100, ge=1)
    seed: int = Field(default=42, ge=0)
    tolerance: float = Field(default=1e-9, gt=0.0)
    # Negative-control hook: scales the closed form so tests can verify
    # that a corrupted mode function is caught. Leave at 1.0 in real use.
    corrupt_scale: float = 1.0


class ConstantsConfig(BaseModel):
    """Optional overrides of the CODATA defaults, plain SI numbers."""

    model_config = ConfigDict(extra="forbid")

    c: Optional[float] = None
    hbar: Optional[float] = None
    planck_mass: Optional[float] = None
    earth_mass: Optional[float] = None
    earth_radius: Optional[float] = None


class Scenario(BaseModel):
    model_config = ConfigDict(extra="forbid")

    transition: TransitionConfig
    dm: DmConfig
    scheme: SchemeConfig
    geometry: GeometryConfig
    noise: NoiseConfig
    output: OutputConfig = OutputConfig()
    constants: Optional[ConstantsConfig] = None
    oracle: OracleConfig = OracleConfig()


def format_validation_error(err: ValidationError) -> str:
    lines = []
    for issue in err.errors():
        path = ".".join(str(p) for p in issue["loc"]) or "<root>"
        lines.append(f"{path}: {issue['msg']}")
    return "\n".join(lines)


def parse_scenario(data: dict) -> Scenario:
    try:
        return Scenario.model_validate(data)
    except ValidationError as err:
        raise ScenarioError(format_validation_error(err)) from err


def load_scenario(path: str) -> Scenario:
    """Read and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise ScenarioError(f"cannot read config {path!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise ScenarioError(f"config {path!r} is not valid JSON: {err}") from err
    if not isinstance(data, dict):
        raise ScenarioError(f"config {path!r} must contain a JSON object")
    return parse_scenario(data)
