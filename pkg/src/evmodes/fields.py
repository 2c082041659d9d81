"""Evanescent TE10 fields in the barrier and their energy transport.

Inside the cut-off section (0 <= z <= L) the non-zero field components
of the TE10 mode are, with sigma(z) = A e^{beta z} + B e^{-beta z} and
delta(z) = -A e^{beta z} + B e^{-beta z},

    E_y = (i H0 omega mu0 / k_c) sin(k_c x) e^{-i omega t} sigma(z)
    H_x = (H0 beta / k_c)        sin(k_c x) e^{-i omega t} delta(z)
    H_z =  H0                    cos(k_c x) e^{-i omega t} sigma(z)

Time-averaged axial Poynting flux and energy densities:

    S_z       = Re(-E_y H_x*) / 2
    w         = (eps0 |E_y|^2 + mu0 |H_x|^2 + mu0 |H_z|^2) / 4
    w_variant = (eps0 |E_y|^2 + mu0 |H_x|^2) / 4

w_variant drops the axial magnetic term, counting only the transverse
components that an under-the-barrier traveling wave would carry.

Cross-section integrals have closed forms.  With C = cosh 2 beta (z - L):

    P_z    = |T H0|^2 a b mu0 c k^2 / (4 k_c^2)            (z-independent)
    W      = (1/8)  |T H0|^2 a b mu0 [ (k_c^2/beta^2) C
                + k^2 (beta^2 - k^2) / (k_c^2 beta^2) ]
    W_var  = (1/16) |T H0|^2 a b mu0 [ (k_c^2/beta^2) C
                - (beta^2 - k^2)^2 / (k_c^2 beta^2) ]

and the average energy velocity is v_bar = P_z / W.  Note the minus sign
in the variant bracket: direct substitution of the fields (and the
numerical oracle in this module) require it, which makes
v_bar_variant(z = L) = c exactly at every frequency.  Both definitions
satisfy |v_bar| <= c for all 0 < z <= L.

The quadrature oracle integrates S_z and w across the guide with a fixed
Gauss-Legendre rule, reconstructing the z-structure numerically from A
and B; it exists solely to validate the closed forms and shares none of
their algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .units import UnitSystem
from .waveguide import ModeState, ScatterCoeffs, WaveguideConfig, cutoff_frequency, make_mode, scatter_coeffs

__all__ = [
    "FieldSample",
    "DensitySample",
    "EnergyTransport",
    "SweepResult",
    "eval_fields",
    "poynting_density",
    "integrated_transport",
    "transport_by_quadrature",
    "subluminality_sweep",
]

DENSITIES = ("full", "variant")
SUBLUMINAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FieldSample:
    """Complex field components at one (x, z, t), or along an x array."""

    E_y: complex | np.ndarray
    H_x: complex | np.ndarray
    H_z: complex | np.ndarray
    x: float | np.ndarray
    z: float
    t: float
    units: UnitSystem


@dataclass(frozen=True)
class DensitySample:
    """Pointwise time-averaged flux and energy densities."""

    S_z: float | np.ndarray
    w: float | np.ndarray
    w_variant: float | np.ndarray


@dataclass(frozen=True)
class EnergyTransport:
    """Transport quantities at a single axial position.

    S_z, w, w_variant are pointwise densities at the broad-wall midpoint
    x = a/2 (where sin(k_c x) = 1); P_z and W are the cross-section
    integrated power and line energy density for the selected density
    definition, and v_bar = P_z / W.
    """

    S_z: float
    w: float
    w_variant: float
    P_z: float
    W: float
    v_bar: float
    density: str
    method: str


def _check_density(density: str):
    if density not in DENSITIES:
        raise ValueError(f"density must be one of {DENSITIES}, got {density!r}")


def _check_position(mode: ModeState, x, z: float):
    a, L = mode.config.a, mode.config.L
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)) or np.any(xa < 0.0) or np.any(xa > a):
        raise ValueError(f"x must lie in [0, a] = [0, {a!r}]")
    if not (isinstance(z, (int, float)) and math.isfinite(z)) or z < 0.0 or z > L:
        raise ValueError(f"z must lie in [0, L] = [0, {L!r}], got {z!r}")


def _axial_factors(mode: ModeState, coeffs: ScatterCoeffs, z: float):
    """Decaying and growing interior components at height z."""
    ea = coeffs.A * math.exp(mode.beta * z)
    eb = coeffs.B * math.exp(-mode.beta * z)
    return ea, eb


def eval_fields(mode: ModeState, coeffs: ScatterCoeffs, x, z: float, t: float,
                h0: float = 1.0) -> FieldSample:
    """Sample E_y, H_x, H_z at (x, z, t); x may be an array.

    Positions must lie in the closed barrier cross-section
    0 <= x <= a, 0 <= z <= L; the interior expressions extend
    continuously onto both z boundaries.
    """
    _check_position(mode, x, z)
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise ValueError(f"t must be a finite real, got {t!r}")
    units = mode.config.units
    ea, eb = _axial_factors(mode, coeffs, z)
    sigma = ea + eb
    delta = eb - ea
    xa = np.asarray(x, dtype=float)
    sin_x = np.sin(mode.k_c * xa)
    cos_x = np.cos(mode.k_c * xa)
    osc = complex(np.exp(-1j * mode.omega * t))
    E_y = 1j * h0 * mode.omega * units.mu0 / mode.k_c * sin_x * osc * sigma
    H_x = h0 * mode.beta / mode.k_c * sin_x * osc * delta
    H_z = h0 * cos_x * osc * sigma
    if np.ndim(x) == 0:
        E_y, H_x, H_z = complex(E_y), complex(H_x), complex(H_z)
        xa = float(xa)
    return FieldSample(E_y=E_y, H_x=H_x, H_z=H_z, x=xa, z=float(z), t=float(t),
                       units=units)


def poynting_density(sample: FieldSample) -> DensitySample:
    """Time-averaged S_z, w, w_variant from a field sample.

    Works directly on the summed complex fields; for nearly opaque
    barriers the interference part of E_y H_x* cancels against much
    larger real terms, so the relative (not absolute) precision of S_z
    degrades there.  The transport oracle keeps the contributions
    separate instead.
    """
    u = sample.units
    S_z = 0.5 * np.real(-sample.E_y * np.conj(sample.H_x))
    w_variant = 0.25 * (u.eps0 * np.abs(sample.E_y) ** 2
                        + u.mu0 * np.abs(sample.H_x) ** 2)
    w = w_variant + 0.25 * u.mu0 * np.abs(sample.H_z) ** 2
    return DensitySample(S_z=S_z, w=w, w_variant=w_variant)


def _stable_densities(mode: ModeState, coeffs: ScatterCoeffs, x, z: float,
                      h0: float = 1.0) -> DensitySample:
    """Densities with the interference product kept at full relative precision.

    sigma * conj(delta) is expanded over the four coefficient products;
    the two same-coefficient products are purely real, and the two cross
    products carry the whole imaginary part, so S_z keeps ~machine
    relative accuracy even when |A e^{beta z}| and |B e^{-beta z}|
    differ by many orders of magnitude.
    """
    units = mode.config.units
    ea, eb = _axial_factors(mode, coeffs, z)
    xa = np.asarray(x, dtype=float)
    sin2 = np.sin(mode.k_c * xa) ** 2
    cos2 = np.cos(mode.k_c * xa) ** 2

    im_cross = (ea * np.conj(eb)).imag
    S_z = (mode.omega * units.mu0 * mode.beta * h0 * h0 / mode.k_c**2) \
        * sin2 * im_cross

    abs_sigma2 = abs(ea + eb) ** 2
    abs_delta2 = abs(eb - ea) ** 2
    ey2 = (h0 * mode.omega * units.mu0 / mode.k_c) ** 2 * sin2 * abs_sigma2
    hx2 = (h0 * mode.beta / mode.k_c) ** 2 * sin2 * abs_delta2
    hz2 = h0 * h0 * cos2 * abs_sigma2
    w_variant = 0.25 * (units.eps0 * ey2 + units.mu0 * hx2)
    w = w_variant + 0.25 * units.mu0 * hz2
    return DensitySample(S_z=S_z, w=w, w_variant=w_variant)


def integrated_transport(mode: ModeState, coeffs: ScatterCoeffs, z: float,
                         density: str = "full", h0: float = 1.0) -> EnergyTransport:
    """Closed-form P_z, W and v_bar at axial position z (0 < z <= L)."""
    _check_density(density)
    _check_position(mode, 0.0, z)
    cfg = mode.config
    units = cfg.units
    k, beta, k_c = mode.k, mode.beta, mode.k_c
    T2 = coeffs.T2
    scale = T2 * h0 * h0 * cfg.a * cfg.b * units.mu0

    C = math.cosh(2.0 * beta * (z - cfg.L))
    common = (k_c * k_c) / (beta * beta) * C
    if density == "full":
        bracket = common + k * k * (beta * beta - k * k) / (k_c * k_c * beta * beta)
        W = scale * bracket / 8.0
        v_bar = units.c * (2.0 * k * k / (k_c * k_c)) / bracket
    else:
        bracket = common - (beta * beta - k * k) ** 2 / (k_c * k_c * beta * beta)
        W = scale * bracket / 16.0
        v_bar = units.c * (4.0 * k * k / (k_c * k_c)) / bracket
    P_z = scale * units.c * k * k / (4.0 * k_c * k_c)

    point = _stable_densities(mode, coeffs, 0.5 * cfg.a, z, h0)
    return EnergyTransport(
        S_z=float(point.S_z), w=float(point.w), w_variant=float(point.w_variant),
        P_z=P_z, W=W, v_bar=v_bar, density=density, method="closed_form",
    )


@lru_cache(maxsize=8)
def _gauss_legendre(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def _oracle_integrals(mode: ModeState, coeffs: ScatterCoeffs, z: float,
                      h0: float = 1.0, n_nodes: int = 64):
    """Gauss-Legendre cross-section integrals of S_z, w and w_variant.

    Returns (P_z, W_full, W_variant).
    """
    cfg = mode.config
    if n_nodes < 16:
        raise ValueError(f"n_nodes must be >= 16 for a trustworthy oracle, got {n_nodes}")
    nodes, weights = _gauss_legendre(n_nodes)
    xs = 0.5 * cfg.a * (nodes + 1.0)
    wx = 0.5 * cfg.a * weights
    dens = _stable_densities(mode, coeffs, xs, z, h0)
    P_z = cfg.b * float(np.dot(wx, dens.S_z))
    W_full = cfg.b * float(np.dot(wx, dens.w))
    W_variant = cfg.b * float(np.dot(wx, dens.w_variant))
    return P_z, W_full, W_variant


def transport_by_quadrature(mode: ModeState, coeffs: ScatterCoeffs, z: float,
                            density: str = "full", h0: float = 1.0,
                            n_nodes: int = 64) -> EnergyTransport:
    """Field-integration oracle for :func:`integrated_transport`.

    Integrates the pointwise densities across the guide cross-section
    with an n_nodes Gauss-Legendre rule in x (the y dependence is flat,
    contributing the factor b).  Shares no algebra with the closed
    forms beyond the field expressions themselves.
    """
    _check_density(density)
    _check_position(mode, 0.0, z)
    cfg = mode.config
    P_z, W_full, W_variant = _oracle_integrals(mode, coeffs, z, h0, n_nodes)
    W = W_full if density == "full" else W_variant
    v_bar = P_z / W

    point = _stable_densities(mode, coeffs, 0.5 * cfg.a, z, h0)
    return EnergyTransport(
        S_z=float(point.S_z), w=float(point.w), w_variant=float(point.w_variant),
        P_z=P_z, W=W, v_bar=v_bar, density=density, method="quadrature",
    )


@dataclass(frozen=True)
class SweepResult:
    """Outcome of a subluminality sweep over an (omega, z) grid."""

    density: str
    max_ratio: float
    argmax_omega_fraction: float
    argmax_z_fraction: float
    passed: bool
    tolerance: float
    rows: list  # (omega/omega_c, z/L, v_bar/c) in grid order


def subluminality_sweep(config: WaveguideConfig, omega_fractions, z_fractions,
                        density: str = "full",
                        tolerance: float = SUBLUMINAL_TOLERANCE,
                        threads: int = 1) -> SweepResult:
    """Evaluate |v_bar|/c over a grid of omega/omega_c and z/L values.

    Fractions must be strictly inside (0, 1) for omega (evanescent
    band) and inside (0, 1] for z.  The sweep passes when the maximum
    ratio does not exceed 1 + tolerance.
    """
    _check_density(density)
    omega_fractions = [float(f) for f in omega_fractions]
    z_fractions = [float(f) for f in z_fractions]
    if not omega_fractions or not z_fractions:
        raise ValueError("sweep grids must be non-empty")
    for f in omega_fractions:
        if not 0.0 < f < 1.0:
            raise ValueError(f"omega fraction {f!r} outside the evanescent band (0, 1)")
    for f in z_fractions:
        if not 0.0 < f <= 1.0:
            raise ValueError(f"z fraction {f!r} outside (0, 1]")

    omega_c = cutoff_frequency(config)

    def one_row(omega_frac: float):
        mode = make_mode(config, omega_frac * omega_c)
        coeffs = scatter_coeffs(mode)
        out = []
        for zf in z_fractions:
            tr = integrated_transport(mode, coeffs, zf * config.L, density)
            out.append((omega_frac, zf, tr.v_bar / config.units.c))
        return out

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(one_row, omega_fractions))
    else:
        chunks = [one_row(f) for f in omega_fractions]

    rows = [r for chunk in chunks for r in chunk]
    best = max(range(len(rows)), key=lambda i: abs(rows[i][2]))
    max_ratio = abs(rows[best][2])
    return SweepResult(
        density=density,
        max_ratio=max_ratio,
        argmax_omega_fraction=rows[best][0],
        argmax_z_fraction=rows[best][1],
        passed=max_ratio <= 1.0 + tolerance,
        tolerance=tolerance,
        rows=rows,
    )
