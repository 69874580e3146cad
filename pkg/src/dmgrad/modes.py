"""Interrogation-mode functions of the two multi-diamond pulse schemes.

The "+" scheme (arms redirected every crossing, all pulses separated by T)
and the "-" scheme (arm roles interchanged between subsequent diamonds)
lead to different dimensionless mode functions of (omega T, Q). Both have
removable singularities where a tangent or cosine in the raw expression
blows up; near those points the functions are evaluated through exact
factored rewrites around the nearest singular point, with the sign factors
resolved analytically, so no cancellation occurs anywhere on the domain.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .search import bracket_minimum, golden_section_min

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

# Window around a removable singularity inside which the factored form is
# used. The raw forms lose ~7 digits within 1e-6 of a pole; the factored
# forms are exact identities, so a wide window costs nothing.
_SINGULAR_WINDOW = 0.05


class Variant(enum.Enum):
    """Pulse-scheme variant: sign-alternating ("-") or resonant ("+")."""

    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True)
class PulseScheme:
    """Multi-diamond pulse sequence: variant, diamond count, timing, momenta."""

    variant: Variant
    Q: int                       # diamonds
    T: float                     # s, half-diamond (interrogation) time
    N: int = 1                   # transferred momenta

    def __post_init__(self):
        if self.Q < 1:
            raise DomainError(f"diamond count must be >= 1, got {self.Q}")
        if self.N < 1:
            raise DomainError(f"momentum number must be >= 1, got {self.N}")
        if self.T <= 0.0:
            raise DomainError(f"interrogation time must be positive, got {self.T}")

    @property
    def t_tot(self) -> float:
        """Total sequence duration 2 Q T."""
        return 2.0 * self.Q * self.T


@dataclass(frozen=True)
class ModeMaximum:
    """Result of maximizing |mode function| over omega T at fixed Q."""

    omega_T_star: float          # rad, in (0, 2 pi)
    q_max: float
    deviation: Optional[float]   # q_max - Q/2, minus scheme only


def _reduce(omega_T: float) -> float:
    """Map omega T into [0, 2 pi] using periodicity of both mode functions."""
    if 0.0 <= omega_T <= TWO_PI:
        return omega_T
    return omega_T % TWO_PI


def _sin_half_pi(n: int) -> int:
    """sin(n pi/2) for odd integer n, resolved exactly."""
    return 1 if n % 4 == 1 else -1


def mode_plus(omega_T: float, Q: int) -> float:
    """Mode function of the "+" scheme: sin(Q wT) tan(wT/2) / 2.

    Continuous on the whole domain; at wT = pi (mod 2 pi) the removable
    singularity of the tangent is evaluated through the factored identity
    (-1)^(Q+1)/2 * cos(v/2) * sin(Q v)/sin(v/2) around the nearest pole,
    whose limit magnitude is Q.
    """
    if Q < 1:
        raise DomainError(f"diamond count must be >= 1, got {Q}")
    u = _reduce(omega_T)
    if abs(math.cos(0.5 * u)) < _SINGULAR_WINDOW:
        # nearest odd multiple of pi; for u in [0, 2 pi] this is pi itself,
        # but the reduction keeps the general form cheap
        j = round((u - math.pi) / TWO_PI)
        v = u - (2 * j + 1) * math.pi
        ratio = 2.0 * Q if v == 0.0 else math.sin(Q * v) / math.sin(0.5 * v)
        sign = 1.0 if Q % 2 == 1 else -1.0
        return 0.5 * sign * math.cos(0.5 * v) * ratio
    return 0.5 * math.sin(Q * u) * math.tan(0.5 * u)


def mode_minus(omega_T: float, Q: int) -> float:
    """Mode function of the "-" scheme, with the odd/even-Q branch.

    sin^2(wT/2) cos(Q wT)/cos(wT) for odd Q and the sine form for even Q.
    Near odd multiples of pi/2 the cosine ratio is evaluated through the
    factored identity [trig(Q s)/sin(s)] * sin(Q w)/sin(w) about the nearest
    singular point s, with the constant trig values of half-integer
    multiples of pi resolved exactly.
    """
    if Q < 1:
        raise DomainError(f"diamond count must be >= 1, got {Q}")
    u = _reduce(omega_T)
    s_half = math.sin(0.5 * u)
    amplitude = s_half * s_half
    cos_u = math.cos(u)
    if abs(cos_u) < _SINGULAR_WINDOW:
        m = round(u / HALF_PI)          # odd inside the window
        w = u - m * HALF_PI
        ratio = float(Q) if w == 0.0 else math.sin(Q * w) / math.sin(w)
        sin_s = _sin_half_pi(m)
        if Q % 2 == 1:
            # cos(Qu)/cos(u) = [sin(Q m pi/2)/sin(m pi/2)] sin(Qw)/sin(w)
            return amplitude * (_sin_half_pi(Q * m) / sin_s) * ratio
        # sin(Qu)/cos(u) = -[cos(Q m pi/2)/sin(m pi/2)] sin(Qw)/sin(w)
        cos_qs = 1 if (Q * m) % 4 == 0 else -1     # Q m even
        return -amplitude * (cos_qs / sin_s) * ratio
    numerator = math.cos(Q * u) if Q % 2 == 1 else math.sin(Q * u)
    return amplitude * numerator / cos_u


def mode_value(variant: Variant, omega_T: float, Q: int) -> float:
    """Dispatch to the variant's mode function."""
    if variant is Variant.PLUS:
        return mode_plus(omega_T, Q)
    return mode_minus(omega_T, Q)


# Resonant-mode operating points: the signal is amplified by the diamond
# count, |Q-(pi/2, Q)| = Q/2 and |Q+(pi, Q)| = Q.
RESONANT_OMEGA_T = {Variant.MINUS: HALF_PI, Variant.PLUS: math.pi}


def resonant_mode_value(variant: Variant, Q: int) -> float:
    """|mode| at the variant's resonant interrogation time."""
    return abs(mode_value(variant, RESONANT_OMEGA_T[variant], Q))


def maximize_mode(variant: Variant, Q: int, rel_tol: float = 1e-10) -> ModeMaximum:
    """Global maximum of |mode| over omega T in (0, 2 pi).

    Dense scan (the function oscillates ~Q times per period, so the grid
    density scales with Q) followed by golden-section refinement. Grid ties
    resolve to the smallest omega T. The resonant point is always included
    as a candidate, so q_max >= Q/2 (minus) resp. Q (plus) holds exactly.
    """
    if Q < 1:
        raise DomainError(f"diamond count must be >= 1, got {Q}")
    n = max(200 * Q, 400)
    step = TWO_PI / (n + 1)
    best_x, best_v = RESONANT_OMEGA_T[variant], resonant_mode_value(variant, Q)
    for i in range(1, n + 1):
        x = i * step
        v = abs(mode_value(variant, x, Q))
        if v > best_v:
            best_x, best_v = x, v

    lo = max(best_x - step, 0.0)
    hi = min(best_x + step, TWO_PI)
    x_star, neg_v, _ = golden_section_min(
        lambda x: -abs(mode_value(variant, x, Q)), lo, hi, rel_tol=rel_tol)
    q_max = -neg_v
    if q_max < best_v:           # refinement must never lose the grid best
        x_star, q_max = best_x, best_v
    deviation = q_max - 0.5 * Q if variant is Variant.MINUS else None
    return ModeMaximum(omega_T_star=x_star, q_max=q_max, deviation=deviation)


def off_resonant_scaling(variant: Variant, q_list, omega_t_tot: float):
    """|mode| at fixed small omega T_tot, with T = T_tot/(2Q) per diamond count.

    Far off resonance (omega T_tot << 1) the minus scheme falls off as 1/Q^2,
    with even diamond numbers suppressed by a further factor ~omega T_tot/2.
    Returns [(Q, |mode|)] rows.
    """
    if not omega_t_tot < 0.01:
        raise DomainError(
            f"off-resonant check requires omega*T_tot < 0.01, got {omega_t_tot}")
    rows = []
    for q in q_list:
        u = omega_t_tot / (2.0 * q)
        rows.append((int(q), abs(mode_value(variant, u, int(q)))))
    return rows


def fit_inverse_square(rows):
    """Least-squares fit of value = c/Q^2; returns (c, max relative residual)."""
    if not rows:
        raise DomainError("cannot fit an empty table")
    num = sum(v / (q * q) for q, v in rows)
    den = sum(1.0 / (q * q) ** 2 for q, _ in rows)
    c = num / den
    max_residual = max(abs(v - c / (q * q)) / (c / (q * q)) for q, v in rows)
    return c, max_residual
