"""Propagation of signal-amplitude fluctuations into coupling uncertainty.

Implements the general Gaussian-propagation form, the resonant-mode and
shot-noise closed forms, the baseline-optimal expressions (heights B/3 and
B/5), and the discovery bound. Dead points of the mode function yield a
tagged infinite uncertainty instead of raising, so parameter sweeps never
abort at zeros.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .constants import CODATA2018, PhysicalConstants
from .errors import DomainError
from .phase import DmWave


class NoiseKind(enum.Enum):
    FIXED_PHASE_NOISE = "fixed"
    SHOT_NOISE = "shot"
    QUANTUM_ENHANCED = "quantum"


@dataclass(frozen=True)
class NoiseModel:
    """Signal-amplitude fluctuation model.

    Fixed: a given dPhi_S in rad. Shot noise: sqrt(2/(nu n_at)) for a
    differential measurement with nu = T_int/T_tot repetitions. Quantum
    enhanced: the atom-number scaling improves to 1/n_at, dPhi_S =
    sqrt(2/nu)/n_at, leaving everything else (including the optimal
    height) unchanged.
    """

    kind: NoiseKind
    delta_phi_s: Optional[float] = None    # rad, fixed kind
    n_at: Optional[float] = None           # atoms per interferometer
    t_int: Optional[float] = None          # s, total integration time
    snr: float = 1.0

    def __post_init__(self):
        if self.snr <= 0.0:
            raise DomainError(f"SNR must be positive, got {self.snr}")
        if self.kind is NoiseKind.FIXED_PHASE_NOISE:
            if self.delta_phi_s is None or self.delta_phi_s <= 0.0:
                raise DomainError("fixed noise requires delta_phi_s > 0")
        else:
            if self.n_at is None or self.n_at < 1:
                raise DomainError("shot-noise models require n_at >= 1")
            if self.t_int is None or self.t_int <= 0.0:
                raise DomainError("shot-noise models require T_int > 0")

    def repetitions(self, t_tot: float) -> float:
        """nu = T_int / T_tot, assuming vanishing dead time between runs."""
        if t_tot <= 0.0:
            raise DomainError(f"total duration must be positive, got {t_tot}")
        if self.t_int is None:
            raise DomainError("integration time is only defined for shot-noise kinds")
        if self.t_int < t_tot:
            raise DomainError(
                f"integration time {self.t_int} shorter than one sequence {t_tot} "
                "(fewer than one repetition)")
        return self.t_int / t_tot

    def phase_noise(self, t_tot: float) -> float:
        """dPhi_S for a sequence of duration t_tot."""
        if self.kind is NoiseKind.FIXED_PHASE_NOISE:
            return self.delta_phi_s
        nu = self.repetitions(t_tot)
        if self.kind is NoiseKind.SHOT_NOISE:
            return math.sqrt(2.0 / (nu * self.n_at))
        return math.sqrt(2.0 / nu) / self.n_at


@dataclass(frozen=True)
class SensitivityResult:
    """Coupling uncertainty with its discovery bound and input echo."""

    delta_eps: float
    eps_5sigma: float
    snr: float
    inputs: dict = field(default_factory=dict)

    @property
    def dead_point(self) -> bool:
        return not math.isfinite(self.delta_eps)


def uncertainty_general(noise_phase: float, d_omega: float, tau_l: float,
                        N: int, mode: float) -> float:
    """dPhi_S / (4 dOm tau_L N |Q_mp|), the Gaussian-propagation uncertainty.

    A vanishing mode value is a dead point of the detector: the result is
    float('inf'), not an exception, so sweeps across omega T survive zeros.
    """
    if noise_phase <= 0.0:
        raise DomainError(f"phase noise must be positive, got {noise_phase}")
    if d_omega <= 0.0:
        raise DomainError(f"oscillation amplitude must be positive, got {d_omega}")
    if tau_l <= 0.0:
        raise DomainError(f"propagation delay must be positive, got {tau_l}")
    if N < 1:
        raise DomainError(f"momentum number must be >= 1, got {N}")
    mode = abs(mode)
    if mode == 0.0:
        return math.inf
    return noise_phase / (4.0 * d_omega * tau_l * N * mode)


def uncertainty_resonant(noise_phase: float, d_omega: float, wave: DmWave,
                         tau_l: float, N: int, t_tot: float) -> float:
    """(pi/2) dPhi_S / (N dOm omega tau_L T_tot), resonant-mode detection.

    Equals the general form under either resonant substitution
    (|Q-| = Q/2 at omega T = pi/2, or |Q+| = Q at omega T = pi) with
    T_tot = 2 Q T, so the value is scheme independent. The product
    dOm * omega is frequency independent, which makes this limit
    independent of the DM mass.
    """
    if t_tot <= 0.0:
        raise DomainError(f"total duration must be positive, got {t_tot}")
    if noise_phase <= 0.0:
        raise DomainError(f"phase noise must be positive, got {noise_phase}")
    if tau_l <= 0.0:
        raise DomainError(f"propagation delay must be positive, got {tau_l}")
    if N < 1:
        raise DomainError(f"momentum number must be >= 1, got {N}")
    return 0.5 * math.pi * noise_phase / (N * d_omega * wave.omega * tau_l * t_tot)


def uncertainty_shot_noise(n_at: float, t_int: float, d_omega: float, wave: DmWave,
                           tau_l: float, N: int, t_tot: float,
                           quantum_enhanced: bool = False) -> float:
    """pi / (sqrt(2 n_at) N dOm omega tau_L sqrt(T_tot T_int)) for shot noise.

    Identical to the resonant form with dPhi_S = sqrt(2/(nu n_at)) and
    nu = T_int/T_tot. With quantum-enhanced input states the atom-number
    scaling changes from n_at^(-1/2) to n_at^(-1).
    """
    if n_at < 1:
        raise DomainError(f"atom number must be >= 1, got {n_at}")
    if t_tot <= 0.0:
        raise DomainError(f"total duration must be positive, got {t_tot}")
    if t_int < t_tot:
        raise DomainError(
            f"integration time {t_int} shorter than one sequence {t_tot} "
            "(fewer than one repetition)")
    atom_factor = math.sqrt(2.0) * n_at if quantum_enhanced else math.sqrt(2.0 * n_at)
    return math.pi / (atom_factor * N * d_omega * wave.omega * tau_l
                      * math.sqrt(t_tot * t_int))


class OptimalKind(enum.Enum):
    FIXED = "fixed"
    SHOT = "shot"


def closed_form_optimal(kind: OptimalKind, *, N: int, omega_atom: float,
                        rho_dm: float, baseline: float,
                        noise_phase: Optional[float] = None,
                        n_at: Optional[float] = None, nu: Optional[float] = None,
                        constants: PhysicalConstants = CODATA2018) -> float:
    """Baseline-optimal uncertainty closed forms.

    FIXED (height B/3):  3 sqrt(3 pi) dPhi_S/(32 N) * (m_P c^2/hbar Omega)
                         * (L_P/R_E) * sqrt(m_E c^2/(rho B^3)).
    SHOT  (height B/5):  5/(64 N) sqrt(10 pi/(n_at nu)) * same tail.

    Earth's mass and radius enter through the surface gravity; both forms
    must match the general pipeline with derived g to rounding error.
    """
    if baseline <= 0.0:
        raise DomainError(f"baseline must be positive, got {baseline}")
    if N < 1:
        raise DomainError(f"momentum number must be >= 1, got {N}")
    if omega_atom <= 0.0:
        raise DomainError(f"transition frequency must be positive, got {omega_atom}")
    if rho_dm <= 0.0:
        raise DomainError(f"DM energy density must be positive, got {rho_dm}")
    tail = (constants.planck_mass * constants.c**2 / (constants.hbar * omega_atom)
            * constants.planck_length / constants.earth_radius
            * math.sqrt(constants.earth_mass * constants.c**2 / (rho_dm * baseline**3)))
    if kind is OptimalKind.FIXED:
        if noise_phase is None or noise_phase <= 0.0:
            raise DomainError("fixed-noise closed form requires noise_phase > 0")
        return 3.0 * math.sqrt(3.0 * math.pi) * noise_phase / (32.0 * N) * tail
    if n_at is None or n_at < 1 or nu is None or nu <= 0.0:
        raise DomainError("shot-noise closed form requires n_at >= 1 and nu > 0")
    return 5.0 / (64.0 * N) * math.sqrt(10.0 * math.pi / (n_at * nu)) * tail


def coupling_bound(delta_eps: float, snr: float = 1.0) -> float:
    """Coupling bound eps = delta_eps * sqrt(SNR)."""
    if snr <= 0.0:
        raise DomainError(f"SNR must be positive, got {snr}")
    return delta_eps * math.sqrt(snr)


def five_sigma_bound(delta_eps: float, snr: float = 1.0) -> float:
    """Five-sigma discovery bound, 5 * delta_eps * sqrt(SNR).

    For the shot-noise optimal configuration this reproduces the
    25/(64 N) sqrt(10 pi SNR/(n_at nu)) closed form identically.
    """
    return 5.0 * coupling_bound(delta_eps, snr)
