"""Physical constants and the few unit conversions this pipeline needs.

Everything downstream computes in SI; conversions happen only at config
ingest and at output boundaries. Constants default to CODATA 2018 and are
overridable per scenario, so closed-form checks can pin exact numbers.
"""

import math
from dataclasses import dataclass, field

from .errors import DomainError

# CODATA 2018
SPEED_OF_LIGHT = 299792458.0                  # m/s (exact)
PLANCK_CONSTANT = 6.62607015e-34              # J s (exact)
HBAR = PLANCK_CONSTANT / (2.0 * math.pi)      # J s
PLANCK_MASS = 2.176434e-8                     # kg
EARTH_MASS = 5.9722e24                        # kg
EARTH_RADIUS = 6.371e6                        # m
STANDARD_GRAVITY = 9.81                       # m/s^2, sea-level default

GEV_TO_JOULE = 1.602176634e-10                # J per GeV (exact, via e)
CM3_TO_M3 = 1e-6                              # m^3 per cm^3
GEV_PER_CM3_TO_SI = GEV_TO_JOULE / CM3_TO_M3  # (J/m^3) per (GeV/cm^3)


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable constant set; safe to share across concurrent evaluations.

    ``planck_length`` is always derived as hbar/(m_P c), so the defining
    relation holds to rounding error no matter which values are overridden.
    """

    c: float = SPEED_OF_LIGHT
    hbar: float = HBAR
    planck_mass: float = PLANCK_MASS
    earth_mass: float = EARTH_MASS
    earth_radius: float = EARTH_RADIUS
    g_surface: float = STANDARD_GRAVITY
    planck_length: float = field(init=False)

    def __post_init__(self):
        for name in ("c", "hbar", "planck_mass", "earth_mass", "earth_radius", "g_surface"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"constant {name!r} must be positive")
        object.__setattr__(self, "planck_length", self.hbar / (self.planck_mass * self.c))

    @property
    def gravitational_constant(self) -> float:
        """G = hbar c / m_P^2, the form implied by the Planck-unit constants."""
        return self.hbar * self.c / self.planck_mass**2

    def derived_surface_gravity(self) -> float:
        """g at Earth's surface from (m_E, R_E) instead of the stored default."""
        return local_gravity(self.earth_mass, self.earth_radius, self)


CODATA2018 = PhysicalConstants()


def energy_density_to_si(value: float) -> float:
    """Convert an energy density from GeV/cm^3 to J/m^3.

    Exact conversion: 1 GeV = 1.602176634e-10 J, 1 cm^3 = 1e-6 m^3.
    """
    if value < 0.0:
        raise DomainError(f"energy density must be non-negative, got {value}")
    return value * GEV_PER_CM3_TO_SI


def energy_density_from_si(value: float) -> float:
    """Inverse of :func:`energy_density_to_si` (J/m^3 to GeV/cm^3)."""
    if value < 0.0:
        raise DomainError(f"energy density must be non-negative, got {value}")
    return value / GEV_PER_CM3_TO_SI


def local_gravity(m_earth: float, r_earth: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Surface gravity (L_P c^2 m_E)/(m_P R_E^2), i.e. G m_E/R_E^2 with G = hbar c/m_P^2."""
    if m_earth <= 0.0:
        raise DomainError(f"mass must be positive, got {m_earth}")
    if r_earth <= 0.0:
        raise DomainError(f"radius must be positive, got {r_earth}")
    return constants.planck_length * constants.c**2 * m_earth / (constants.planck_mass * r_earth**2)
