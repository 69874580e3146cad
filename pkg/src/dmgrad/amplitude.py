"""Closed-form gradiometer signal amplitudes.

The oscillation amplitude of the atomic transition frequency follows from
the DM energy density and frequency; the detected RMS amplitude factorizes
into a delay term and the interrogation-mode function. The small-delay
large-momentum-transfer form generalizes the exact expression by the
momentum number N and is valid for omega*tau_L << 1.
"""

import enum
import math
from dataclasses import dataclass

from .constants import CODATA2018, PhysicalConstants
from .errors import DomainError
from .modes import PulseScheme, mode_value
from .phase import DmWave


@dataclass(frozen=True)
class AtomTransition:
    """Unperturbed atomic transition frequency of the clock states."""

    omega_atom: float             # rad/s

    def __post_init__(self):
        if self.omega_atom <= 0.0:
            raise DomainError(
                f"transition frequency must be positive, got {self.omega_atom}")


class AmplitudeRegime(enum.Enum):
    EXACT = "exact"
    SMALL_DELAY_LMT = "small_delay_lmt"


@dataclass(frozen=True)
class SignalAmplitude:
    """Signal amplitude in rad, tagged with the formula that produced it."""

    value: float
    regime: AmplitudeRegime


def delta_omega(transition: AtomTransition, wave: DmWave,
                constants: PhysicalConstants = CODATA2018) -> float:
    """Oscillation amplitude of the transition frequency, in rad/s.

    Omega * (m_P c^2 / hbar omega) * sqrt(8 pi rho_DM L_P^3 / (m_P c^2));
    the Planck mass sets the energy scale and the cube of the Planck length
    the characteristic volume. Diverges as 1/omega, hence omega > 0.
    """
    if wave.omega <= 0.0:
        raise DomainError("delta-omega diverges for omega <= 0")
    mp_c2 = constants.planck_mass * constants.c**2
    return (transition.omega_atom * mp_c2 / (constants.hbar * wave.omega)
            * math.sqrt(8.0 * math.pi * wave.rho_dm * constants.planck_length**3 / mp_c2))


def signal_amplitude_exact(eps_bar: float, d_omega: float, wave: DmWave,
                           tau_l: float, scheme: PulseScheme) -> SignalAmplitude:
    """RMS signal amplitude eps * (8 dOm/omega) |sin(omega tau_L/2) Q_mp|.

    This is the single-momentum (N = 1) expression; the momentum number is
    deliberately not applied here.
    """
    if tau_l < 0.0:
        raise DomainError(f"propagation delay must be non-negative, got {tau_l}")
    if eps_bar < 0.0:
        raise DomainError(f"coupling must be non-negative, got {eps_bar}")
    mode = mode_value(scheme.variant, wave.omega * scheme.T, scheme.Q)
    value = (eps_bar * 8.0 * d_omega / wave.omega
             * abs(math.sin(0.5 * wave.omega * tau_l) * mode))
    return SignalAmplitude(value=value, regime=AmplitudeRegime.EXACT)


def signal_amplitude_lmt(eps_bar: float, d_omega: float, wave: DmWave,
                         tau_l: float, N: int, scheme: PulseScheme) -> SignalAmplitude:
    """Small-delay amplitude eps * 4 dOm tau_L N |Q_mp|, first order in omega tau_L.

    Guarded at omega*tau_L < 0.1 so the quadratic remainder stays below a
    percent; beyond that the exact expression must be used.
    """
    if tau_l < 0.0:
        raise DomainError(f"propagation delay must be non-negative, got {tau_l}")
    if eps_bar < 0.0:
        raise DomainError(f"coupling must be non-negative, got {eps_bar}")
    if N < 1:
        raise DomainError(f"momentum number must be >= 1, got {N}")
    x = wave.omega * tau_l
    if not x < 0.1:
        raise DomainError(
            f"small-delay regime requires omega*tau_L < 0.1, got {x:.4g}; "
            "use the exact amplitude instead")
    mode = mode_value(scheme.variant, wave.omega * scheme.T, scheme.Q)
    value = eps_bar * 4.0 * d_omega * tau_l * N * abs(mode)
    return SignalAmplitude(value=value, regime=AmplitudeRegime.SMALL_DELAY_LMT)
