"""Evanescent TE10 modes in a cut-off rectangular waveguide.

Scattering through a below-cutoff section, energy transport for two
energy-density definitions with a machine-checked subluminality sweep,
and the two-point correlation function of the evanescent photon field.
"""

__version__ = "0.1.0"

from .fields import (
    DENSITIES,
    SUBLUMINAL_TOLERANCE,
    eval_fields,
    integrated_transport,
    poynting_density,
    subluminality_sweep,
    transport_by_quadrature,
)
from .propagator import (
    SpacetimeSeparation,
    asymptotic_fit,
    closed_form_report,
    compton_reach,
    correlation_closed_form,
    correlation_quadrature,
)
from .quadrature import QuadratureError, integrate, integrate_oscillatory
from .specfun import bessel_j, bessel_y, complex_bessel_integral, hankel2
from .units import NORMALIZED, SI, UnitSystem, get_unit_system
from .verify import VerifySettings, run_verification
from .waveguide import (
    ModeState,
    ScatterCoeffs,
    WaveguideConfig,
    cutoff_frequency,
    make_mode,
    scatter_coeffs,
)

__all__ = [
    "__version__",
    "UnitSystem", "NORMALIZED", "SI", "get_unit_system",
    "WaveguideConfig", "ModeState", "ScatterCoeffs",
    "cutoff_frequency", "make_mode", "scatter_coeffs",
    "DENSITIES", "SUBLUMINAL_TOLERANCE",
    "eval_fields", "poynting_density", "integrated_transport",
    "transport_by_quadrature", "subluminality_sweep",
    "QuadratureError", "integrate", "integrate_oscillatory",
    "bessel_j", "bessel_y", "hankel2", "complex_bessel_integral",
    "SpacetimeSeparation", "correlation_quadrature",
    "correlation_closed_form", "asymptotic_fit", "closed_form_report",
    "compton_reach",
    "VerifySettings", "run_verification",
]
