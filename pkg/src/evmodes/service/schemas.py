"""Request and response models for the service layer.

The same models back the HTTP endpoints and the in-process calls the
CLI makes, so a config file, a request body, and a set of CLI flags all
validate through one schema.  `extra="forbid"` everywhere: a typo in a
config key is a config error, not a silently ignored field.
"""

from __future__ import annotations

import math
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..fields import SUBLUMINAL_TOLERANCE
from ..verify import VerifySettings
from ..waveguide import WaveguideConfig
from ..units import get_unit_system

__all__ = [
    "GeometrySpec", "FrequencyGrid", "AxialGrid",
    "ScatterRequest", "VelocityRequest", "FieldsRequest",
    "PropagatorRequest", "VerifyRequest",
    "TablePayload", "VelocitySummary", "FitPayload", "ComparisonPayload",
    "CheckPayload", "ScatterResponse", "VelocityResponse", "FieldsResponse",
    "PropagatorResponse", "VerifyResponse",
]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GeometrySpec(_Model):
    """Waveguide geometry, either normalized (kc_L) or explicit (a, b, L).

    The normalized form sets a = pi so k_c = 1 and L = kc_L; the
    explicit form takes raw lengths in the selected unit system.
    """

    kc_L: float | None = Field(default=None, gt=0.0, allow_inf_nan=False)
    aspect: float = Field(default=0.5, gt=0.0, lt=1.0)
    a: float | None = Field(default=None, gt=0.0, allow_inf_nan=False)
    b: float | None = Field(default=None, gt=0.0, allow_inf_nan=False)
    L: float | None = Field(default=None, gt=0.0, allow_inf_nan=False)
    units: Literal["normalized", "si"] = "normalized"

    @model_validator(mode="after")
    def _one_parameterization(self):
        explicit = (self.a, self.b, self.L)
        if self.kc_L is not None:
            if any(v is not None for v in explicit):
                raise ValueError("give either kc_L or explicit a, b, L, not both")
            if self.units != "normalized":
                raise ValueError("the kc_L shortcut implies normalized units")
        else:
            if any(v is None for v in explicit):
                raise ValueError("explicit geometry needs all of a, b, L")
            if not self.b < self.a:
                raise ValueError("TE10 requires b < a")
        return self

    def to_config(self) -> WaveguideConfig:
        if self.kc_L is not None:
            return WaveguideConfig.normalized(self.kc_L, aspect=self.aspect)
        return WaveguideConfig(a=self.a, b=self.b, L=self.L,
                               units=get_unit_system(self.units))


class FrequencyGrid(_Model):
    """Evanescent-band frequencies as fractions of the cutoff."""

    count: int = Field(default=50, ge=1, le=100_000)
    min_fraction: float = Field(default=0.01, gt=0.0, lt=1.0)
    max_fraction: float = Field(default=0.99, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.max_fraction < self.min_fraction:
            raise ValueError("max_fraction must be >= min_fraction")
        return self

    def fractions(self) -> np.ndarray:
        return np.linspace(self.min_fraction, self.max_fraction, self.count)


class AxialGrid(_Model):
    """Axial positions as fractions of the barrier length, in (0, 1]."""

    count: int = Field(default=20, ge=1, le=100_000)
    min_fraction: float = Field(default=0.05, gt=0.0, le=1.0)
    max_fraction: float = Field(default=1.0, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.max_fraction < self.min_fraction:
            raise ValueError("max_fraction must be >= min_fraction")
        return self

    def fractions(self) -> np.ndarray:
        return np.linspace(self.min_fraction, self.max_fraction, self.count)


def _default_geometry() -> GeometrySpec:
    return GeometrySpec(kc_L=1.0)


class ScatterRequest(_Model):
    geometry: GeometrySpec = Field(default_factory=_default_geometry)
    frequencies: FrequencyGrid = Field(default_factory=FrequencyGrid)


class VelocityRequest(_Model):
    geometry: GeometrySpec = Field(default_factory=_default_geometry)
    frequencies: FrequencyGrid = Field(default_factory=FrequencyGrid)
    axial: AxialGrid = Field(default_factory=AxialGrid)
    density: Literal["full", "variant"] = "full"
    tolerance: float = Field(default=SUBLUMINAL_TOLERANCE, gt=0.0,
                             allow_inf_nan=False)
    threads: int = Field(default=1, ge=1, le=64)


class FieldsRequest(_Model):
    geometry: GeometrySpec = Field(default_factory=_default_geometry)
    omega_fraction: float = Field(default=0.5, gt=0.0, lt=1.0)
    x_count: int = Field(default=9, ge=1, le=10_000)
    z_count: int = Field(default=11, ge=1, le=10_000)
    t: float = Field(default=0.0, allow_inf_nan=False)
    h0: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)


class PropagatorRequest(_Model):
    """Correlation-function evaluation along the two spacetime axes.

    Point lists are dimensionless: omega_c * t on the time axis and
    omega_c * z on the space axis; t = 0 on the time axis is the
    coincidence anchor.  Comparison pairs (omega_c t, omega_c z) must
    be timelike for the closed form to apply.
    """

    omega_c: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    t_axis_points: list[float] = Field(
        default_factory=lambda: [0.0, 2.0, 5.0, 10.0, 20.0, 50.0])
    z_axis_points: list[float] = Field(
        default_factory=lambda: [1.0, 2.0, 5.0, 10.0, 20.0, 50.0])
    comparison_pairs: list[tuple[float, float]] = Field(
        default_factory=lambda: [(5.0, 3.0)])
    tol: float = Field(default=1e-12, gt=0.0, allow_inf_nan=False)
    fit_window: tuple[float, float] = (50.0, 500.0)
    fit_samples: int = Field(default=24, ge=4, le=10_000)

    @model_validator(mode="after")
    def _domains(self):
        if any(not (math.isfinite(x) and x >= 0.0) for x in self.t_axis_points):
            raise ValueError("t_axis_points must be finite and >= 0")
        if any(not (math.isfinite(x) and x > 0.0) for x in self.z_axis_points):
            raise ValueError("z_axis_points must be finite and positive")
        for wt, wz in self.comparison_pairs:
            if not (math.isfinite(wt) and wt > wz >= 0.0):
                raise ValueError(
                    f"comparison pair ({wt!r}, {wz!r}) is not timelike")
        if not (0.0 < self.fit_window[0] < self.fit_window[1] < math.inf):
            raise ValueError("fit_window must be an increasing positive pair")
        return self


class VerifyRequest(_Model):
    """Grid and tolerance knobs for the consolidated verification run."""

    kc_l_values: list[float] = Field(
        default_factory=lambda: [0.5, 1.0, 2.0, 5.0, 10.0])
    omega_count: int = Field(default=100, ge=1)
    z_count: int = Field(default=20, ge=1)
    oracle_nodes: int = Field(default=64, ge=8)
    propagator_tol: float = Field(default=1e-12, gt=0.0, allow_inf_nan=False)
    fit_window: tuple[float, float] = (50.0, 500.0)
    fit_samples: int = Field(default=24, ge=4)

    @model_validator(mode="after")
    def _domains(self):
        if any(not (math.isfinite(v) and v > 0.0) for v in self.kc_l_values):
            raise ValueError("kc_l_values must be finite and positive")
        if not (0.0 < self.fit_window[0] < self.fit_window[1] < math.inf):
            raise ValueError("fit_window must be an increasing positive pair")
        return self

    def to_settings(self) -> VerifySettings:
        return VerifySettings(
            kc_l_values=tuple(self.kc_l_values),
            omega_count=self.omega_count,
            z_count=self.z_count,
            oracle_nodes=self.oracle_nodes,
            propagator_tol=self.propagator_tol,
            fit_window=tuple(self.fit_window),
            fit_samples=self.fit_samples,
        )


class TablePayload(_Model):
    """A numeric table: column names, float rows, scalar metadata."""

    columns: list[str]
    rows: list[list[float]]
    meta: dict[str, Any] = Field(default_factory=dict)


class VelocitySummary(_Model):
    density: str
    max_ratio: float
    argmax_omega_fraction: float
    argmax_z_fraction: float
    passed: bool
    tolerance: float


class FitPayload(_Model):
    direction: str
    exponent: float
    rate: float
    log_amplitude: float
    residual_rms: float
    ok: bool
    n_samples: int
    window: tuple[float, float]
    claimed_exponent: float
    claimed_rate: float


class ComparisonPayload(_Model):
    omega_c_t: float
    omega_c_z: float
    quadrature_re: float
    quadrature_im: float
    closed_form_re: float
    closed_form_im: float
    est_error: float
    abs_ratio: float
    phase_difference: float
    abs_difference: float


class CheckPayload(_Model):
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str


class ScatterResponse(_Model):
    table: TablePayload


class VelocityResponse(_Model):
    table: TablePayload
    summary: VelocitySummary


class FieldsResponse(_Model):
    table: TablePayload


class PropagatorResponse(_Model):
    table: TablePayload
    fits: list[FitPayload]
    closed_form: list[ComparisonPayload]


class VerifyResponse(_Model):
    passed: bool
    checks: list[CheckPayload]
    notes: list[str]
    digest: str
