"""Time-domain evaluation of the DM-induced interferometer phase.

This module is the brute-force ground truth: the per-diamond phase is the
exact antiderivative of the defining integral, multi-diamond phases are
plain sign-weighted sums, and the detected RMS amplitude is obtained by
adaptive quadrature over the wave phase. The closed forms elsewhere in the
package are validated against these routines, so nothing here may share
code with them.
"""

import math
import warnings
from dataclasses import dataclass, replace

from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, NumericalError
from .modes import PulseScheme, Variant

TWO_PI = 2.0 * math.pi

# Below this value of omega*T the factored envelope 4 sin^2(x/2)/omega is
# replaced by its series to keep the omega -> 0 limit finite and smooth.
_SERIES_THRESHOLD = 1e-6


@dataclass(frozen=True)
class DmWave:
    """Classical DM field: angular frequency, shot phase, local energy density.

    The shot phase is stored reduced to [0, 2pi); it varies between shots,
    which is why only the RMS signal amplitude is observable.
    """

    omega: float                  # rad/s
    phi: float = 0.0              # rad
    rho_dm: float = 0.0           # J/m^3

    def __post_init__(self):
        if self.omega <= 0.0:
            raise DomainError(f"DM angular frequency must be positive, got {self.omega}")
        if self.rho_dm < 0.0:
            raise DomainError(f"DM energy density must be non-negative, got {self.rho_dm}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


@dataclass(frozen=True)
class DiamondPhaseInput:
    """Parameters of a single Mach-Zehnder diamond starting at t0."""

    t0: float                     # s
    T: float                      # s, half-diamond (interrogation) time
    eps_bar: float                # dimensionless coupling
    delta_omega: float            # rad/s, transition-frequency oscillation amplitude

    def __post_init__(self):
        if self.T <= 0.0:
            raise DomainError(f"interrogation time must be positive, got {self.T}")
        if self.eps_bar < 0.0:
            raise DomainError(f"coupling must be non-negative, got {self.eps_bar}")
        if self.delta_omega < 0.0:
            raise DomainError(f"oscillation amplitude must be non-negative, got {self.delta_omega}")


def _envelope(omega: float, T: float) -> float:
    """4 sin^2(omega T/2)/omega, with a series branch below the threshold.

    Equals [2 sin(w(t0+T)+phi) - sin(w t0+phi) - sin(w(t0+2T)+phi)] / (w sin(...))
    factored so that no cancellation occurs; the series keeps the constant-
    frequency limit exact (the unperturbed clock phase cancels by symmetry).
    """
    x = omega * T
    if x < _SERIES_THRESHOLD:
        return omega * T * T * (1.0 - x * x / 12.0)
    s = math.sin(0.5 * x)
    return 4.0 * s * s / omega


def single_diamond_phase(inp: DiamondPhaseInput, wave: DmWave) -> float:
    """Phase of one Mach-Zehnder diamond, from the exact antiderivative.

    Evaluates -eps*dOm/w * [2 sin(w(t0+T)+phi) - sin(w t0+phi) - sin(w(t0+2T)+phi)],
    written in the equivalent factored form -eps*dOm * 4 sin^2(wT/2)/w * sin(w(t0+T)+phi).
    """
    mid = wave.omega * (inp.t0 + inp.T) + wave.phi
    return -inp.eps_bar * inp.delta_omega * _envelope(wave.omega, inp.T) * math.sin(mid)


def single_diamond_phase_quadrature(inp: DiamondPhaseInput, wave: DmWave) -> float:
    """Same phase by direct adaptive quadrature of the two cosine integrals.

    Independent route used only for cross-checks of the antiderivative.
    """
    def integrand(t):
        return math.cos(wave.omega * t + wave.phi)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        first, _ = quad(integrand, inp.t0, inp.t0 + inp.T, epsabs=1e-14, epsrel=1e-14)
        second, _ = quad(integrand, inp.t0 + inp.T, inp.t0 + 2.0 * inp.T,
                         epsabs=1e-14, epsrel=1e-14)
    return -inp.eps_bar * inp.delta_omega * (first - second)


def multi_diamond_phase(scheme: PulseScheme, t0: float, wave: DmWave,
                        eps_bar: float, delta_omega: float) -> float:
    """Sign-weighted sum of the per-diamond phases at t0 + 2(q-1)T.

    Scheme "-" alternates the sign (the arms are interchanged between
    subsequent diamonds); scheme "+" adds all diamonds with equal sign.
    """
    total = 0.0
    for q in range(1, scheme.Q + 1):
        inp = DiamondPhaseInput(t0 + 2.0 * (q - 1) * scheme.T, scheme.T, eps_bar, delta_omega)
        term = single_diamond_phase(inp, wave)
        if scheme.variant is Variant.MINUS and (q - 1) % 2 == 1:
            term = -term
        total += term
    return total


def differential_phase(scheme: PulseScheme, t0: float, tau_l: float, wave: DmWave,
                       eps_bar: float, delta_omega: float) -> float:
    """Gradiometer phase: the multi-diamond phase differenced over the light delay."""
    if tau_l < 0.0:
        raise DomainError(f"propagation delay must be non-negative, got {tau_l}")
    return (multi_diamond_phase(scheme, t0 + tau_l, wave, eps_bar, delta_omega)
            - multi_diamond_phase(scheme, t0, wave, eps_bar, delta_omega))


def _rms_once(scheme, t0, tau_l, wave, eps_bar, delta_omega) -> float:
    def dphi_sq(phi):
        shifted = replace(wave, phi=phi)
        d = differential_phase(scheme, t0, tau_l, shifted, eps_bar, delta_omega)
        return d * d

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        integral, abserr = quad(dphi_sq, 0.0, TWO_PI, epsabs=0.0, epsrel=1e-13, limit=200)
    if abserr > 1e-10 * max(abs(integral), 1e-300):
        raise NumericalError(
            f"phase-average quadrature did not converge: achieved {abserr:.3e} "
            f"absolute on an integral of {integral:.3e}")
    return math.sqrt(max(2.0 * integral / TWO_PI, 0.0))


def rms_signal_amplitude_oracle(scheme: PulseScheme, tau_l: float, wave: DmWave,
                                eps_bar: float, delta_omega: float, t0: float = 0.0) -> float:
    """Detected signal amplitude [2 <dPhi^2>_phi]^(1/2) by quadrature over phi.

    The result is independent of the sequence start time; this is asserted
    during evaluation by recomputing at a shifted t0. The shot phase of the
    supplied wave is irrelevant (it is the integration variable).
    """
    if tau_l < 0.0:
        raise DomainError(f"propagation delay must be non-negative, got {tau_l}")
    value = _rms_once(scheme, t0, tau_l, wave, eps_bar, delta_omega)
    shifted = _rms_once(scheme, t0 + 0.37 * TWO_PI / wave.omega, tau_l, wave, eps_bar, delta_omega)
    if abs(value - shifted) > 1e-10 * max(abs(value), abs(shifted), 1e-300):
        raise NumericalError(
            f"RMS amplitude not t0-invariant: {value!r} vs {shifted!r}")
    return value
