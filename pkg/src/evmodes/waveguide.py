"""TE10 dispersion and barrier scattering for a rectangular guide below cutoff.

A guide of cross-section a x b (a > b) carries the TE10 mode with cutoff
wavenumber k_c = pi / a.  Driven below cutoff (0 < omega < omega_c =
c k_c) the axial wavenumber is imaginary and the mode decays with the
real constant

    beta = sqrt(k_c**2 - k**2),          k = omega / c.

A cut-off section of length L sandwiched between propagating guides acts
as a barrier.  Matching the transverse field and its axial derivative at
z = 0 and z = L gives the transmitted amplitude T and the interior
coefficients A, B of the decaying/growing components:

    T = -2i(k/beta) e^{-ikL} /
        { [1 - (k/beta)^2] sinh(beta L) - 2i(k/beta) cosh(beta L) }
    A = (T/2) [1 + ik/beta] e^{ikL - beta L}
    B = (T/2) [1 - ik/beta] e^{ikL + beta L}

|T|^2 + |R|^2 = 1 with |R|^2 = 1 - |T|^2; the reflected phase is not
needed downstream and is not computed.

All amplitudes are evaluated in a scaled form with e^{beta L} factored
out of sinh/cosh, so nothing overflows however opaque the barrier; for
extreme beta*L the magnitude is additionally carried as log|T| + phase,
which stays finite after |T| itself underflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .units import NORMALIZED, UnitSystem

__all__ = [
    "WaveguideConfig",
    "ModeState",
    "ScatterCoeffs",
    "cutoff_frequency",
    "make_mode",
    "scatter_coeffs",
]


@dataclass(frozen=True)
class WaveguideConfig:
    """Geometry of the cut-off section.

    Parameters
    ----------
    a : float
        Broad transverse dimension.  In the normalized system lengths
        are measured in units of a/pi, so a = pi and k_c = 1.
    b : float
        Narrow transverse dimension, 0 < b < a.
    L : float
        Length of the below-cutoff section.
    units : UnitSystem
        Constants used by all downstream field formulas.
    """

    a: float
    b: float
    L: float
    units: UnitSystem = NORMALIZED

    def __post_init__(self):
        for name in ("a", "b", "L"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a finite positive real, got {v!r}")
        if not self.b < self.a:
            raise ValueError(
                f"TE10 requires b < a, got a={self.a!r}, b={self.b!r}"
            )

    @classmethod
    def normalized(cls, kc_L: float, aspect: float = 0.5) -> "WaveguideConfig":
        """Normalized-unit geometry from the dimensionless product k_c L.

        a = pi makes k_c = 1, so L equals kc_L numerically; b = aspect * a.
        """
        return cls(a=math.pi, b=aspect * math.pi, L=kc_L, units=NORMALIZED)

    @property
    def k_c(self) -> float:
        """Cutoff wavenumber pi / a."""
        return math.pi / self.a


def cutoff_frequency(config: WaveguideConfig) -> float:
    """Cutoff angular frequency omega_c = c * pi / a."""
    return config.units.c * math.pi / config.a


@dataclass(frozen=True)
class ModeState:
    """Spectral state of an evanescent TE10 mode.

    Invariant: k**2 + beta**2 == k_c**2 to machine precision.
    """

    omega: float
    k: float
    k_c: float
    beta: float
    config: WaveguideConfig


def make_mode(config: WaveguideConfig, omega: float) -> ModeState:
    """Build the evanescent mode state at angular frequency omega.

    Only 0 < omega < omega_c is physical here; omega = 0 and
    omega >= omega_c (propagating or marginal) are hard errors.
    """
    omega_c = cutoff_frequency(config)
    if not (isinstance(omega, (int, float)) and math.isfinite(omega)):
        raise ValueError(f"omega must be a finite real, got {omega!r}")
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if omega >= omega_c:
        raise ValueError(
            f"omega = {omega!r} is at or above cutoff omega_c = {omega_c!r}; "
            "only evanescent excitation is supported"
        )
    k = omega / config.units.c
    k_c = config.k_c
    # factored difference keeps beta accurate arbitrarily close to cutoff
    beta = math.sqrt((k_c - k) * (k_c + k))
    return ModeState(omega=omega, k=k, k_c=k_c, beta=beta, config=config)


@dataclass(frozen=True)
class ScatterCoeffs:
    """Barrier scattering amplitudes.

    T, A, B are the complex amplitudes defined in the module docstring;
    T2 = |T|^2 and R2 = 1 - T2.  ln_abs_T and phase_T carry the
    transmitted amplitude in log-magnitude/phase form, which remains
    finite for barriers opaque enough that T itself underflows.
    """

    T: complex
    A: complex
    B: complex
    T2: float
    R2: float
    ln_abs_T: float
    phase_T: float


def scatter_coeffs(mode: ModeState, L: float | None = None) -> ScatterCoeffs:
    """Scattering coefficients of the length-L barrier (default: config L).

    The denominator is evaluated with e^{beta L} factored out:

        denom = (e^{beta L} / 2) * [ (1 - u^2)(1 - q) - 2iu (1 + q) ],
        u = k/beta,  q = e^{-2 beta L},

    so T = -4iu e^{-ikL} e^{-beta L} / [...] involves no growing
    exponential.  1 - q is computed with expm1 to stay accurate for
    thin barriers.
    """
    if L is None:
        L = mode.config.L
    if not (isinstance(L, (int, float)) and math.isfinite(L) and L > 0):
        raise ValueError(f"barrier length must be a finite positive real, got {L!r}")

    k, beta = mode.k, mode.beta
    u = k / beta
    bL = beta * L
    q = math.exp(-2.0 * bL)
    one_minus_q = -math.expm1(-2.0 * bL)
    denom = (1.0 - u * u) * one_minus_q - 2j * u * (1.0 + q)
    s = -4j * u * cmath.exp(-1j * k * L) / denom          # s = T e^{beta L}

    ln_abs_T = math.log(abs(s)) - bL
    phase_T = cmath.phase(s)
    T = s * math.exp(-bL)
    T2 = abs(s) ** 2 * q
    phase_ikL = cmath.exp(1j * k * L)
    A = 0.5 * s * (1.0 + 1j * u) * phase_ikL * q
    B = 0.5 * s * (1.0 - 1j * u) * phase_ikL
    return ScatterCoeffs(
        T=T, A=A, B=B, T2=T2, R2=1.0 - T2, ln_abs_T=ln_abs_T, phase_T=phase_T
    )
