"""Scenario-driven operations shared by the HTTP service and the CLI.

Each function takes a validated :class:`~dmgrad.scenario.Scenario` and
returns plain payload objects (dicts and tables). Outputs are deterministic:
identical configs and seeds produce identical tables, so CSV bodies are
byte-stable across runs.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .amplitude import AtomTransition, delta_omega, signal_amplitude_exact, signal_amplitude_lmt
from .constants import CODATA2018, PhysicalConstants, local_gravity
from .errors import DomainError, ScenarioError
from .fountain import DetectorGeometry, optimize_height, total_duration
from .modes import PulseScheme, RESONANT_OMEGA_T, Variant, maximize_mode, mode_minus, mode_plus
from .phase import DmWave, rms_signal_amplitude_oracle
from .scenario import GridRange, Scenario
from .sensitivity import (NoiseKind, NoiseModel, five_sigma_bound,
                          uncertainty_resonant, uncertainty_shot_noise)

SWEEP_AXES = ("omega", "B", "Q", "omega_T")


@dataclass
class Table:
    """Column-ordered numeric table, the unit of CSV output."""

    columns: List[str]
    rows: List[tuple]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def render_csv(table: Table, version: str = __version__) -> str:
    """17-significant-digit CSV with LF endings and a version header line."""
    lines = [f"# dmgrad {version}", f"# columns: {','.join(table.columns)}"]
    for row in table.rows:
        lines.append(",".join(_format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# scenario resolution helpers

def build_constants(sc: Scenario) -> PhysicalConstants:
    if sc.constants is None:
        return CODATA2018
    overrides = {k: v for k, v in sc.constants.model_dump().items() if v is not None}
    return PhysicalConstants(**overrides)


def resolve_gravity(sc: Scenario, constants: PhysicalConstants) -> float:
    if sc.geometry.g == "derived":
        return local_gravity(constants.earth_mass, constants.earth_radius, constants)
    return sc.geometry.g


def _noise_kind(sc: Scenario) -> NoiseKind:
    return NoiseKind(sc.noise.kind)


def _scalar(value, what: str) -> float:
    if isinstance(value, GridRange):
        raise ScenarioError(
            f"{what} is a range; use the sweep operation for ranged axes")
    return value


def _scalar_q(sc: Scenario) -> int:
    qs = sc.scheme.q_values()
    if len(qs) != 1:
        raise ScenarioError("this operation requires a single diamond count Q")
    return qs[0]


def resolve_height(sc: Scenario, baseline: float, g: float) -> float:
    """Numeric height from the config, optimizing it when requested."""
    if sc.geometry.h == "optimize":
        outcome = optimize_height(baseline, _noise_kind(sc), g=g,
                                  v_r=sc.geometry.v_r, Q=max(sc.scheme.q_values()))
        return outcome.h_star
    if not 0.0 < sc.geometry.h < baseline:
        raise DomainError(
            f"height {sc.geometry.h} must lie strictly inside the baseline {baseline}")
    return sc.geometry.h


def _resolved_noise(sc: Scenario, t_tot: float) -> NoiseModel:
    """Noise model with T_int resolved; flags inconsistent (nu, T_int) pairs."""
    cfg = sc.noise
    if cfg.kind == "fixed":
        return NoiseModel(kind=NoiseKind.FIXED_PHASE_NOISE,
                          delta_phi_s=cfg.delta_phi_s, snr=cfg.snr)
    t_int = cfg.T_int
    if t_int is None:
        t_int = cfg.nu * t_tot
    elif cfg.nu is not None:
        derived = t_int / t_tot
        if abs(cfg.nu - derived) > 1e-9 * derived:
            raise DomainError(
                f"noise config sets nu={cfg.nu} but T_int/T_tot={derived:.12g}; "
                "drop one of the two or make them consistent")
    return NoiseModel(kind=NoiseKind(cfg.kind), n_at=cfg.n_at, t_int=t_int, snr=cfg.snr)


def _delta_eps(sc: Scenario, noise: NoiseModel, d_om: float, wave: DmWave,
               tau_l: float, t_tot: float) -> float:
    """Resonant-mode uncertainty for the configured noise kind."""
    n = sc.scheme.N
    if noise.kind is NoiseKind.FIXED_PHASE_NOISE:
        return uncertainty_resonant(noise.delta_phi_s, d_om, wave, tau_l, n, t_tot)
    return uncertainty_shot_noise(noise.n_at, noise.t_int, d_om, wave, tau_l, n, t_tot,
                                  quantum_enhanced=noise.kind is NoiseKind.QUANTUM_ENHANCED)


# ---------------------------------------------------------------------------
# operations

def eval_signal(sc: Scenario) -> dict:
    """Both signal-amplitude regimes and the small-delay expansion error."""
    constants = build_constants(sc)
    g = resolve_gravity(sc, constants)
    omega = _scalar(sc.dm.omega, "dm.omega")
    baseline = _scalar(sc.geometry.B, "geometry.B")
    q = _scalar_q(sc)
    height = resolve_height(sc, baseline, g)
    geometry = DetectorGeometry(baseline, height, sc.geometry.v_r, g, constants.c)

    omega_t = sc.scheme.omega_T
    if isinstance(omega_t, GridRange):
        raise ScenarioError("scheme.omega_T is a range; eval-signal needs a single value")
    if omega_t is None:
        omega_t = RESONANT_OMEGA_T[Variant(sc.scheme.variant)]
    scheme = PulseScheme(Variant(sc.scheme.variant), q, omega_t / omega, sc.scheme.N)

    wave = DmWave(omega=omega, rho_dm=sc.dm.rho_dm)
    d_om = delta_omega(AtomTransition(sc.transition.omega_atom), wave, constants)
    exact = signal_amplitude_exact(sc.dm.eps_bar, d_om, wave, geometry.tau_l, scheme)

    x = omega * geometry.tau_l
    lmt_value = None
    expansion_rel_diff = None
    if x < 0.1:
        lmt = signal_amplitude_lmt(sc.dm.eps_bar, d_om, wave, geometry.tau_l,
                                   sc.scheme.N, scheme)
        lmt_value = lmt.value
        lmt_n1 = lmt.value / sc.scheme.N
        if exact.value > 0.0:
            expansion_rel_diff = abs(exact.value - lmt_n1) / exact.value
    return {
        "omega": omega,
        "omega_T": omega_t,
        "omega_tau_l": x,
        "variant": sc.scheme.variant,
        "Q": q,
        "N": sc.scheme.N,
        "eps_bar": sc.dm.eps_bar,
        "delta_omega": d_om,
        "tau_l": geometry.tau_l,
        "baseline": baseline,
        "height": height,
        "phi_s_exact": exact.value,
        "phi_s_lmt": lmt_value,
        "lmt_expansion_rel_diff": expansion_rel_diff,
        "lmt_in_regime": x < 0.1,
    }


def _omega_t_grid(sc: Scenario, require_range: bool = False) -> List[float]:
    spec = sc.scheme.omega_T
    if isinstance(spec, GridRange):
        return spec.values()
    if require_range:
        raise ScenarioError("this operation requires an omega_T range in scheme.omega_T")
    if spec is None:
        return [float(v) for v in np.linspace(0.0, 2.0 * math.pi, 1001)]
    return [spec]


def mode_function_table(sc: Scenario) -> Table:
    """(omega_T, Q, mode_plus, mode_minus) grid for plotting both schemes."""
    grid = _omega_t_grid(sc)
    rows = []
    for q in sc.scheme.q_values():
        for u in grid:
            rows.append((u, q, mode_plus(u, q), mode_minus(u, q)))
    return Table(columns=["omega_T", "Q", "mode_plus", "mode_minus"], rows=rows)


def mode_max_table(sc: Scenario) -> Table:
    """Per-Q maxima of |mode| with the deviation from the resonant value."""
    variant = Variant(sc.scheme.variant)
    rows = []
    for q in sc.scheme.q_values():
        peak = maximize_mode(variant, q)
        rows.append((q, peak.omega_T_star, peak.q_max, peak.deviation))
    return Table(columns=["Q", "omega_T_star", "q_max", "deviation"], rows=rows)


def _sensitivity_point(sc: Scenario, constants: PhysicalConstants, g: float,
                       omega: float, baseline: float, height: float) -> dict:
    q = _scalar_q(sc)
    geometry = DetectorGeometry(baseline, height, sc.geometry.v_r, g, constants.c)
    t_tot = total_duration(height, g, q, sc.geometry.v_r)
    noise = _resolved_noise(sc, t_tot)
    wave = DmWave(omega=omega, rho_dm=sc.dm.rho_dm)
    d_om = delta_omega(AtomTransition(sc.transition.omega_atom), wave, constants)
    d_eps = _delta_eps(sc, noise, d_om, wave, geometry.tau_l, t_tot)
    return {
        "baseline": baseline,
        "height": height,
        "separation": geometry.separation,
        "tau_l": geometry.tau_l,
        "t_tot": t_tot,
        "gravity": g,
        "omega": omega,
        "omega_atom": sc.transition.omega_atom,
        "rho_dm": sc.dm.rho_dm,
        "variant": sc.scheme.variant,
        "Q": q,
        "N": sc.scheme.N,
        "noise_kind": sc.noise.kind,
        "delta_phi_s": noise.phase_noise(t_tot),
        "nu": None if noise.kind is NoiseKind.FIXED_PHASE_NOISE else noise.repetitions(t_tot),
        "n_at": sc.noise.n_at,
        "T_int": noise.t_int,
        "snr": sc.noise.snr,
        "delta_eps": d_eps,
        "eps_5sigma": five_sigma_bound(d_eps, sc.noise.snr),
    }


SENSITIVITY_COLUMNS = ["B", "h", "omega", "Q", "N", "scheme", "delta_eps", "eps_5sigma"]


def _sensitivity_row(point: dict) -> tuple:
    return (point["baseline"], point["height"], point["omega"], point["Q"],
            point["N"], point["variant"], point["delta_eps"], point["eps_5sigma"])


def sensitivity_result(sc: Scenario) -> dict:
    """Resonant-mode sensitivity of a fully scalar scenario."""
    constants = build_constants(sc)
    g = resolve_gravity(sc, constants)
    omega = _scalar(sc.dm.omega, "dm.omega")
    baseline = _scalar(sc.geometry.B, "geometry.B")
    height = resolve_height(sc, baseline, g)
    return _sensitivity_point(sc, constants, g, omega, baseline, height)


def sensitivity_table(sc: Scenario) -> Table:
    return Table(columns=SENSITIVITY_COLUMNS, rows=[_sensitivity_row(sensitivity_result(sc))])


def optimize_run(sc: Scenario, sweep_points: int = 65) -> Tuple[dict, Table]:
    """Height optimization plus the h-sweep curve around it."""
    constants = build_constants(sc)
    g = resolve_gravity(sc, constants)
    omega = _scalar(sc.dm.omega, "dm.omega")
    baseline = _scalar(sc.geometry.B, "geometry.B")
    q = _scalar_q(sc)
    wave = DmWave(omega=omega, rho_dm=sc.dm.rho_dm)
    d_om = delta_omega(AtomTransition(sc.transition.omega_atom), wave, constants)

    def delta_eps_at(height: float) -> float:
        t_tot = math.sqrt(8.0 * height / g) - 2.0 * sc.geometry.v_r / (g * q)
        if t_tot <= 0.0:
            return math.inf
        tau_l = (baseline - height) / constants.c
        noise = _resolved_noise(sc, t_tot)
        return _delta_eps(sc, noise, d_om, wave, tau_l, t_tot)

    outcome = optimize_height(baseline, _noise_kind(sc), g=g, v_r=sc.geometry.v_r,
                              Q=q, uncertainty=delta_eps_at)
    payload = {
        "h_star": outcome.h_star,
        "fraction": outcome.fraction,
        "delta_eps_star": outcome.delta_eps_star,
        "eps_5sigma_star": five_sigma_bound(outcome.delta_eps_star, sc.noise.snr),
        "iterations": outcome.iterations,
        "converged": outcome.converged,
        "baseline": baseline,
        "noise_kind": sc.noise.kind,
        "gravity": g,
        "v_r": sc.geometry.v_r,
        "Q": q,
    }
    heights = np.linspace(baseline * 1e-3, baseline * (1.0 - 1e-3), sweep_points)
    rows = [(float(h), float(h) / baseline, delta_eps_at(float(h))) for h in heights]
    return payload, Table(columns=["h", "fraction", "delta_eps"], rows=rows)


def sweep(sc: Scenario, axis: str) -> Table:
    """One CSV row per grid point along the declared axis."""
    if axis not in SWEEP_AXES:
        raise ScenarioError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    constants = build_constants(sc)
    g = resolve_gravity(sc, constants)

    if axis == "omega":
        if not isinstance(sc.dm.omega, GridRange):
            raise ScenarioError("sweep axis 'omega' requires a range in dm.omega")
        baseline = _scalar(sc.geometry.B, "geometry.B")
        height = resolve_height(sc, baseline, g)
        rows = [_sensitivity_row(_sensitivity_point(sc, constants, g, om, baseline, height))
                for om in sc.dm.omega.values()]
        return Table(columns=SENSITIVITY_COLUMNS, rows=rows)

    if axis == "B":
        if not isinstance(sc.geometry.B, GridRange):
            raise ScenarioError("sweep axis 'B' requires a range in geometry.B")
        omega = _scalar(sc.dm.omega, "dm.omega")
        rows = []
        for baseline in sc.geometry.B.values():
            height = resolve_height(sc, baseline, g)
            rows.append(_sensitivity_row(
                _sensitivity_point(sc, constants, g, omega, baseline, height)))
        return Table(columns=SENSITIVITY_COLUMNS, rows=rows)

    if axis == "Q":
        if len(sc.scheme.q_values()) < 2:
            raise ScenarioError("sweep axis 'Q' requires a Q list or range in scheme.Q")
        return mode_max_table(sc)

    # axis == "omega_T"
    if not isinstance(sc.scheme.omega_T, GridRange):
        raise ScenarioError("sweep axis 'omega_T' requires a range in scheme.omega_T")
    return mode_function_table(sc)


# ---------------------------------------------------------------------------
# oracle cross-check

_SINGULAR_OMEGA_T = (0.5 * math.pi, math.pi, 1.5 * math.pi)


def oracle_check(sc: Scenario, seed: Optional[int] = None,
                 samples: Optional[int] = None) -> dict:
    """Closed-form signal amplitude vs the phase-average quadrature oracle.

    Runs the deterministic singular-point samples plus a seeded random
    sample of (variant, Q, omega T, omega tau_L, couplings) and reports the
    maximum relative deviation. The scenario's oracle section supplies the
    defaults; the corrupt_scale hook exists for negative-control tests.
    """
    cfg = sc.oracle
    seed = cfg.seed if seed is None else seed
    n_random = cfg.samples if samples is None else samples
    rng = np.random.default_rng(seed)

    cases = []
    for variant in (Variant.MINUS, Variant.PLUS):
        for omega_t in _SINGULAR_OMEGA_T:
            cases.append((variant, 4, omega_t, 0.4, 1.0, 1.0, 1.0))
    for _ in range(n_random):
        variant = Variant.MINUS if rng.integers(0, 2) == 0 else Variant.PLUS
        q = int(rng.integers(1, 13))
        omega_t = rng.uniform(1e-6, 2.0 * math.pi - 1e-6)
        omega_tau = rng.uniform(1e-6, 1.0)
        omega = math.exp(rng.uniform(math.log(0.3), math.log(30.0)))
        eps_bar = rng.uniform(0.2, 2.0)
        d_om = rng.uniform(0.1, 10.0)
        cases.append((variant, q, omega_t, omega_tau, omega, eps_bar, d_om))

    worst = {"relative_deviation": -1.0}
    for variant, q, omega_t, omega_tau, omega, eps_bar, d_om in cases:
        wave = DmWave(omega=omega)
        scheme = PulseScheme(variant, q, omega_t / omega)
        tau_l = omega_tau / omega
        closed = signal_amplitude_exact(eps_bar, d_om, wave, tau_l, scheme).value
        closed *= cfg.corrupt_scale
        oracle = rms_signal_amplitude_oracle(scheme, tau_l, wave, eps_bar, d_om)
        deviation = abs(closed - oracle) / max(abs(closed), abs(oracle), 1e-300)
        if deviation > worst["relative_deviation"]:
            worst = {
                "relative_deviation": deviation,
                "variant": variant.value,
                "Q": q,
                "omega_T": omega_t,
                "omega_tau_l": omega_tau,
                "closed_form": closed,
                "oracle": oracle,
            }
    max_dev = worst["relative_deviation"]
    return {
        "samples": len(cases),
        "random_samples": n_random,
        "seed": seed,
        "tolerance": cfg.tolerance,
        "max_relative_deviation": max_dev,
        "passed": bool(max_dev <= cfg.tolerance),
        "worst": worst,
    }
