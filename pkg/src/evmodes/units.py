"""Unit systems for the waveguide problem.

Internally everything is computed in whatever system the configuration
carries; the normalized system (c = mu0 = eps0 = hbar = 1) is the default
and keeps all quantities O(1).  SI values follow the 2019 redefinition,
with eps0 derived from mu0 and c so that mu0 * eps0 == 1 / c**2 holds to
machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["UnitSystem", "NORMALIZED", "SI", "get_unit_system"]


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants used by the field and transport formulas.

    Attributes
    ----------
    name : str
        "normalized" or "SI".
    c : float
        Vacuum speed of light.
    mu0 : float
        Vacuum permeability.
    eps0 : float
        Vacuum permittivity.
    hbar : float
        Reduced Planck constant (only the Compton scale uses it).
    """

    name: str
    c: float
    mu0: float
    eps0: float
    hbar: float


NORMALIZED = UnitSystem(name="normalized", c=1.0, mu0=1.0, eps0=1.0, hbar=1.0)

_C_SI = 299792458.0
_MU0_SI = 4.0e-7 * math.pi
SI = UnitSystem(
    name="SI",
    c=_C_SI,
    mu0=_MU0_SI,
    eps0=1.0 / (_MU0_SI * _C_SI * _C_SI),
    hbar=1.054571817e-34,
)

_BY_NAME = {"normalized": NORMALIZED, "SI": SI}


def get_unit_system(name: str) -> UnitSystem:
    """Look up a unit system by name ("normalized" or "SI")."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(
            f"unknown unit system {name!r}; expected 'normalized' or 'SI'"
        ) from None
