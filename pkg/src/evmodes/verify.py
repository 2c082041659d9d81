"""Consolidated verification suite.

Runs every numerical guarantee the package makes, in a fixed order,
and returns a deterministic report: the scattering identities, the
closed-form/oracle transport agreement, subluminality of both energy
velocities, the correlation-function anchor and decay fits, and the
special-function identities.

Observations that the underlying claims only predict (the spacelike
decay law, the Hankel closed form near the light cone, the imaginary
part of the half-range phase integral) are *reported* in the notes,
never asserted: a mismatch there is a finding, not a failure.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .fields import (
    SUBLUMINAL_TOLERANCE,
    _oracle_integrals,
    integrated_transport,
    subluminality_sweep,
)
from .propagator import (
    SpacetimeSeparation,
    asymptotic_fit,
    closed_form_report,
    correlation_quadrature,
)
from .tables import fmt17, to_canonical_json
from .waveguide import WaveguideConfig, cutoff_frequency, make_mode, scatter_coeffs

__all__ = ["VerifySettings", "CheckResult", "VerificationReport", "run_verification"]


@dataclass(frozen=True)
class VerifySettings:
    """Grids and tolerances for one verification run."""

    kc_l_values: tuple = (0.5, 1.0, 2.0, 5.0, 10.0)
    omega_count: int = 100
    omega_min_fraction: float = 0.01
    omega_max_fraction: float = 0.99
    z_count: int = 20
    z_min_fraction: float = 0.01
    z_max_fraction: float = 0.99
    oracle_nodes: int = 64
    propagator_tol: float = 1e-12
    fit_window: tuple = (50.0, 500.0)
    fit_samples: int = 24

    def __post_init__(self):
        if self.omega_count < 1 or self.z_count < 1:
            raise ValueError("grid counts must be >= 1")
        if not (0.0 < self.omega_min_fraction <= self.omega_max_fraction < 1.0):
            raise ValueError("omega fractions must satisfy 0 < min <= max < 1")
        if not (0.0 < self.z_min_fraction <= self.z_max_fraction < 1.0):
            raise ValueError("z fractions must satisfy 0 < min <= max < 1")
        if not self.kc_l_values:
            raise ValueError("kc_l_values must be non-empty")


@dataclass(frozen=True)
class CheckResult:
    """One verification check: measured value against its tolerance."""

    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checks: list
    notes: list = field(default_factory=list)

    @property
    def digest(self) -> str:
        """SHA-256 over the canonical JSON form; equal runs hash equal."""
        payload = {
            "passed": bool(self.passed),
            "checks": [
                {"name": c.name, "passed": bool(c.passed), "measured": fmt17(c.measured),
                 "tolerance": fmt17(c.tolerance), "detail": c.detail}
                for c in self.checks
            ],
            "notes": list(self.notes),
        }
        return hashlib.sha256(to_canonical_json(payload).encode()).hexdigest()


def _omega_fractions(s: VerifySettings):
    return np.linspace(s.omega_min_fraction, s.omega_max_fraction, s.omega_count)


def _z_fractions(s: VerifySettings):
    return np.linspace(s.z_min_fraction, s.z_max_fraction, s.z_count)


def _scatter_grid_checks(s: VerifySettings, checks: list):
    max_unit = 0.0
    max_cont = 0.0
    for kcl in s.kc_l_values:
        cfg = WaveguideConfig.normalized(kcl)
        omega_c = cutoff_frequency(cfg)
        for of in _omega_fractions(s):
            mode = make_mode(cfg, float(of) * omega_c)
            co = scatter_coeffs(mode)
            max_unit = max(max_unit, abs(co.T2 + co.R2 - 1.0))

            grow = math.exp(mode.beta * cfg.L)
            decay = math.exp(-mode.beta * cfg.L)
            rhs_val = co.T * np.exp(1j * mode.k * cfg.L)
            lhs_val = co.A * grow + co.B * decay
            lhs_der = mode.beta * (co.A * grow - co.B * decay)
            rhs_der = 1j * mode.k * rhs_val
            max_cont = max(
                max_cont,
                abs(lhs_val - rhs_val) / abs(rhs_val),
                abs(lhs_der - rhs_der) / abs(rhs_der),
            )
    checks.append(CheckResult(
        name="scatter_unitarity", passed=max_unit <= 1e-12,
        measured=max_unit, tolerance=1e-12,
        detail="max |R^2 + |T|^2 - 1| over the (omega, L) grid",
    ))
    checks.append(CheckResult(
        name="boundary_matching", passed=max_cont <= 1e-10,
        measured=max_cont, tolerance=1e-10,
        detail="max relative mismatch of interior value/derivative vs the "
               "transmitted wave at z = L",
    ))


def _transport_grid_checks(s: VerifySettings, checks: list):
    max_spread = 0.0
    max_rel = 0.0
    for kcl in s.kc_l_values:
        cfg = WaveguideConfig.normalized(kcl)
        omega_c = cutoff_frequency(cfg)
        for of in _omega_fractions(s):
            mode = make_mode(cfg, float(of) * omega_c)
            co = scatter_coeffs(mode)
            p_values = []
            for zf in _z_fractions(s):
                z = float(zf) * cfg.L
                P_or, Wf_or, Wv_or = _oracle_integrals(mode, co, z,
                                                       n_nodes=s.oracle_nodes)
                p_values.append(P_or)
                cf_full = integrated_transport(mode, co, z, "full")
                cf_var = integrated_transport(mode, co, z, "variant")
                max_rel = max(
                    max_rel,
                    abs(cf_full.v_bar - P_or / Wf_or) / abs(P_or / Wf_or),
                    abs(cf_var.v_bar - P_or / Wv_or) / abs(P_or / Wv_or),
                    abs(cf_full.P_z - P_or) / abs(P_or),
                )
            spread = (max(p_values) - min(p_values)) / abs(np.mean(p_values))
            max_spread = max(max_spread, spread)
    checks.append(CheckResult(
        name="power_conservation", passed=max_spread <= 1e-10,
        measured=max_spread, tolerance=1e-10,
        detail="max relative z-spread of the field-integrated P_z",
    ))
    checks.append(CheckResult(
        name="transport_closed_form", passed=max_rel <= 1e-10,
        measured=max_rel, tolerance=1e-10,
        detail="max relative deviation of closed-form P_z and v_bar (both "
               "densities) from the field-integration oracle",
    ))


def _subluminality_checks(s: VerifySettings, checks: list):
    worst = 0.0
    worst_detail = ""
    for density in ("full", "variant"):
        for kcl in s.kc_l_values:
            cfg = WaveguideConfig.normalized(kcl)
            res = subluminality_sweep(cfg, _omega_fractions(s), _z_fractions(s),
                                      density=density)
            if res.max_ratio > worst:
                worst = res.max_ratio
                worst_detail = (f"density={density}, kc_L={fmt17(kcl)}, "
                                f"omega/omega_c={fmt17(res.argmax_omega_fraction)}, "
                                f"z/L={fmt17(res.argmax_z_fraction)}")
    checks.append(CheckResult(
        name="subluminality", passed=worst <= 1.0 + SUBLUMINAL_TOLERANCE,
        measured=worst, tolerance=1.0 + SUBLUMINAL_TOLERANCE,
        detail=f"max |v_bar|/c over both densities; attained at {worst_detail}",
    ))

    # midband spot values at k^2 = k_c^2 / 2, z = L
    max_dev = 0.0
    for kcl in s.kc_l_values:
        cfg = WaveguideConfig.normalized(kcl)
        mode = make_mode(cfg, math.sqrt(0.5) * cutoff_frequency(cfg))
        co = scatter_coeffs(mode)
        v_full = integrated_transport(mode, co, cfg.L, "full").v_bar
        v_var = integrated_transport(mode, co, cfg.L, "variant").v_bar
        c = cfg.units.c
        max_dev = max(max_dev, abs(v_full / c - 0.5), abs(v_var / c - 1.0))
    checks.append(CheckResult(
        name="midband_exit_velocities", passed=max_dev <= 1e-6,
        measured=max_dev, tolerance=1e-6,
        detail="v_bar/c at k^2 = k_c^2/2, z = L: 0.5 (full) and 1.0 (variant)",
    ))


def _propagator_checks(s: VerifySettings, checks: list, notes: list):
    omega_c = 1.0
    anchor = omega_c**2 / (64.0 * math.pi**2)
    got = correlation_quadrature(SpacetimeSeparation(0.0, 0.0), omega_c,
                                 tol=s.propagator_tol)
    rel = abs(got.G - anchor) / anchor
    checks.append(CheckResult(
        name="coincidence_anchor", passed=rel <= 1e-8,
        measured=rel, tolerance=1e-8,
        detail="G(0,0) against omega_c^2 / (64 pi^2)",
    ))

    min_ratio = math.inf
    for wz in range(1, 51):
        v = correlation_quadrature(SpacetimeSeparation(0.0, float(wz)), omega_c,
                                   tol=s.propagator_tol)
        est = v.est_error if v.est_error > 0.0 else 5e-324
        min_ratio = min(min_ratio, abs(v.G) / est)
    checks.append(CheckResult(
        name="spacelike_nonvanishing", passed=min_ratio > 10.0,
        measured=min_ratio, tolerance=10.0,
        detail="min |G(0,z)| / est_error for omega_c z in [1, 50]; correlations "
               "must stand clear of the numerical noise floor",
    ))

    ft = asymptotic_fit(omega_c, "timelike", window=s.fit_window,
                        n_samples=s.fit_samples)
    dev = max(abs(ft.exponent - ft.claimed_exponent) / 0.05,
              abs(ft.rate - ft.claimed_rate) / 0.01)
    checks.append(CheckResult(
        name="timelike_decay_fit", passed=dev <= 1.0,
        measured=dev, tolerance=1.0,
        detail=f"fitted exponent {fmt17(ft.exponent)} (claimed -0.5 +- 0.05), "
               f"rate {fmt17(ft.rate)} omega_c (claimed 0 +- 0.01)",
    ))

    fs = asymptotic_fit(omega_c, "spacelike", window=s.fit_window,
                        n_samples=s.fit_samples)
    checks.append(CheckResult(
        name="spacelike_decay_fit", passed=fs.ok,
        measured=fs.residual_rms, tolerance=0.05,
        detail="fit of log|G(0,z)| completes with residual below threshold; "
               "the fitted pair is reported in the notes, not asserted",
    ))
    notes.append(
        f"spacelike axis fit over omega_c z in [{fmt17(fs.window[0])}, "
        f"{fmt17(fs.window[1])}]: exponent = {fmt17(fs.exponent)}, rate = "
        f"{fmt17(fs.rate)} omega_c; claimed asymptotics (exponent -1.5, rate "
        f"1.0 omega_c) are reported for comparison, not asserted."
    )

    for row in closed_form_report(omega_c, tol=s.propagator_tol):
        notes.append(
            f"closed form vs quadrature at omega_c(t, z) = ({fmt17(row.omega_c_t)}, "
            f"{fmt17(row.omega_c_z)}): |ratio| = {fmt17(row.abs_ratio)}, phase "
            f"difference = {fmt17(row.phase_difference)} rad, |difference| = "
            f"{fmt17(row.abs_difference)}."
        )


def _derivative(kind: str, n: int, x: float) -> float:
    f = specfun.bessel_j if kind == "J" else specfun.bessel_y
    if n == 0:
        return -f(1, x)
    return f(n - 1, x) - (n / x) * f(n, x)


def _specfun_checks(s: VerifySettings, checks: list, notes: list):
    xs = np.linspace(0.1, 20.0, 120)
    max_wron = 0.0
    max_rec = 0.0
    for x in xs:
        x = float(x)
        target = 2.0 / (math.pi * x)
        for n in (0, 1, 2):
            wron = (specfun.bessel_j(n, x) * _derivative("Y", n, x)
                    - _derivative("J", n, x) * specfun.bessel_y(n, x))
            max_wron = max(max_wron, abs(wron - target) / target)
        for kind in ("J", "Y"):
            f = specfun.bessel_j if kind == "J" else specfun.bessel_y
            terms = (f(0, x), f(2, x), (2.0 / x) * f(1, x))
            resid = abs(terms[0] + terms[1] - terms[2])
            scale = max(1.0, *(abs(t) for t in terms))
            max_rec = max(max_rec, resid / scale)
    checks.append(CheckResult(
        name="bessel_wronskian", passed=max_wron <= 1e-10,
        measured=max_wron, tolerance=1e-10,
        detail="max relative deviation of J_n Y_n' - J_n' Y_n from 2/(pi x) "
               "on x in [0.1, 20]",
    ))
    checks.append(CheckResult(
        name="bessel_recurrence", passed=max_rec <= 1e-10,
        measured=max_rec, tolerance=1e-10,
        detail="max scaled residual of f_0 + f_2 = (2/x) f_1 for J and Y",
    ))

    rs = np.exp(np.linspace(math.log(0.1), math.log(20.0), 24))
    max_real = 0.0
    gap_min, gap_max = math.inf, 0.0
    for r in rs:
        r = float(r)
        res = specfun.complex_bessel_integral(r)
        err = abs(res.value.real - specfun.bessel_j(0, r))
        max_real = max(max_real, err / max(10.0 * res.est_error, 1e-12))
        gap = abs(res.value.imag - (-specfun.bessel_y(0, r)))
        gap_min = min(gap_min, gap)
        gap_max = max(gap_max, gap)
    checks.append(CheckResult(
        name="phase_integral_real_part", passed=max_real <= 1.0,
        measured=max_real, tolerance=1.0,
        detail="Re of (2/pi) int_0^{pi/2} exp(-i r sin theta) dtheta matches "
               "J_0(r) within max(10 est_error, 1e-12)",
    ))
    notes.append(
        f"imaginary part of the half-range phase integral differs from -Y_0(r) "
        f"by between {fmt17(gap_min)} and {fmt17(gap_max)} on r in [0.1, 20] "
        f"(it equals minus the Struve function H_0, not -Y_0); reported, not "
        f"corrected."
    )


def run_verification(settings: VerifySettings | None = None) -> VerificationReport:
    """Run the full check suite; deterministic for identical settings.

    Raises QuadratureError if a tolerance in `settings` is numerically
    unreachable: non-convergence is surfaced, never smoothed over.
    """
    s = settings or VerifySettings()
    checks: list = []
    notes: list = []
    _scatter_grid_checks(s, checks)
    _transport_grid_checks(s, checks)
    _subluminality_checks(s, checks)
    _propagator_checks(s, checks, notes)
    _specfun_checks(s, checks, notes)
    return VerificationReport(
        passed=all(c.passed for c in checks),
        checks=checks,
        notes=notes,
    )
