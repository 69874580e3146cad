import math
from dataclasses import replace

import numpy as np
import pytest

from dmgrad.errors import DomainError
from dmgrad.modes import PulseScheme, Variant
from dmgrad.phase import (DiamondPhaseInput, DmWave, differential_phase,
                          multi_diamond_phase, rms_signal_amplitude_oracle,
                          single_diamond_phase, single_diamond_phase_quadrature)


def test_wave_invariants():
    with pytest.raises(DomainError):
        DmWave(omega=0.0)
    with pytest.raises(DomainError):
        DmWave(omega=1.0, rho_dm=-1.0)
    assert DmWave(omega=1.0, phi=7.0).phi == pytest.approx(7.0 - 2 * math.pi)


def test_no_coupling_no_phase():
    inp = DiamondPhaseInput(t0=0.3, T=1.7, eps_bar=0.0, delta_omega=2.0)
    assert single_diamond_phase(inp, DmWave(omega=0.9)) == 0.0


def test_single_diamond_pinned_example():
    # omega*T = pi, omega*t0 = -pi/2, phi = 0, eps*dOm/omega = 1
    omega = 1.3
    inp = DiamondPhaseInput(t0=-math.pi / 2 / omega, T=math.pi / omega,
                            eps_bar=1.0, delta_omega=omega)
    wave = DmWave(omega=omega)
    assert single_diamond_phase(inp, wave) == pytest.approx(-4.0, abs=1e-12)
    assert single_diamond_phase_quadrature(inp, wave) == pytest.approx(-4.0, abs=1e-12)


def test_vanishing_frequency_limit():
    # constant transition frequency cancels by the sequence time symmetry
    inp = DiamondPhaseInput(t0=0.2, T=1.0, eps_bar=1.0, delta_omega=1.0)
    values = [abs(single_diamond_phase(inp, DmWave(omega=w)))
              for w in (1e-3, 1e-6, 1e-9, 1e-12)]
    assert values == sorted(values, reverse=True)
    assert values[-1] < 1e-11


def test_series_branch_continuity():
    inp = DiamondPhaseInput(t0=0.2, T=1.0, eps_bar=1.0, delta_omega=1.0)
    below = single_diamond_phase(inp, DmWave(omega=0.999e-6))
    above = single_diamond_phase(inp, DmWave(omega=1.001e-6))
    assert below == pytest.approx(above, rel=1e-8)


def test_antiderivative_matches_quadrature_randomized():
    rng = np.random.default_rng(7)
    for _ in range(50):
        inp = DiamondPhaseInput(t0=rng.uniform(-5.0, 5.0), T=rng.uniform(0.05, 4.0),
                                eps_bar=rng.uniform(0.0, 2.0),
                                delta_omega=rng.uniform(0.0, 3.0))
        wave = DmWave(omega=rng.uniform(0.05, 8.0), phi=rng.uniform(0.0, 2 * math.pi))
        exact = single_diamond_phase(inp, wave)
        quad = single_diamond_phase_quadrature(inp, wave)
        assert exact == pytest.approx(quad, abs=1e-11)


def test_linearity_in_coupling_and_amplitude():
    wave = DmWave(omega=0.8, phi=0.4)
    base = DiamondPhaseInput(t0=0.1, T=1.2, eps_bar=1.0, delta_omega=1.0)
    ref = single_diamond_phase(base, wave)
    assert single_diamond_phase(replace(base, eps_bar=3.5), wave) == pytest.approx(
        3.5 * ref, rel=1e-14)
    assert single_diamond_phase(replace(base, delta_omega=2.25), wave) == pytest.approx(
        2.25 * ref, rel=1e-14)


def test_multi_diamond_single_is_single():
    wave = DmWave(omega=1.1, phi=0.2)
    for variant in Variant:
        scheme = PulseScheme(variant, Q=1, T=0.9)
        inp = DiamondPhaseInput(t0=0.4, T=0.9, eps_bar=1.3, delta_omega=0.7)
        assert multi_diamond_phase(scheme, 0.4, wave, 1.3, 0.7) == pytest.approx(
            single_diamond_phase(inp, wave), rel=1e-14)


def test_minus_two_diamonds_cancel_at_resonant_omega_t():
    # at omega*T = pi both diamonds acquire identical phases whose signs
    # alternate in the minus scheme, so the pair cancels
    omega = 1.0
    scheme = PulseScheme(Variant.MINUS, Q=2, T=math.pi / omega)
    wave = DmWave(omega=omega, phi=0.3)
    first = single_diamond_phase(DiamondPhaseInput(0.0, scheme.T, 1.0, 1.0), wave)
    second = single_diamond_phase(
        DiamondPhaseInput(2 * scheme.T, scheme.T, 1.0, 1.0), wave)
    assert first == pytest.approx(second, rel=1e-12)
    assert multi_diamond_phase(scheme, 0.0, wave, 1.0, 1.0) == pytest.approx(
        0.0, abs=1e-12)


def test_multi_diamond_plus_pinned_by_quadrature():
    # frozen from term-by-term adaptive quadrature of the defining integrals
    scheme = PulseScheme(Variant.PLUS, Q=3, T=0.7)
    wave = DmWave(omega=1.0, phi=0.3)
    value = multi_diamond_phase(scheme, 0.0, wave, 1.0, 1.0)
    assert value == pytest.approx(-0.42567151406489556, abs=1e-11)


def test_multi_diamond_matches_quadrature_per_term():
    rng = np.random.default_rng(11)
    for variant in Variant:
        q = int(rng.integers(2, 6))
        t = rng.uniform(0.2, 1.5)
        wave = DmWave(omega=rng.uniform(0.3, 3.0), phi=rng.uniform(0.0, 2 * math.pi))
        scheme = PulseScheme(variant, Q=q, T=t)
        total = 0.0
        for i in range(q):
            inp = DiamondPhaseInput(0.5 + 2 * i * t, t, 1.0, 1.0)
            term = single_diamond_phase_quadrature(inp, wave)
            if variant is Variant.MINUS and i % 2 == 1:
                term = -term
            total += term
        assert multi_diamond_phase(scheme, 0.5, wave, 1.0, 1.0) == pytest.approx(
            total, abs=1e-11)


def test_sign_structure_minus_vs_plus():
    # negating the even-q (0-indexed odd) diamond terms of the minus sum
    # reproduces the plus sum term by term
    wave = DmWave(omega=0.9, phi=1.1)
    q, t = 5, 0.8
    terms = []
    for i in range(q):
        inp = DiamondPhaseInput(2 * i * t, t, 1.0, 1.0)
        terms.append(single_diamond_phase(inp, wave))
    minus = multi_diamond_phase(PulseScheme(Variant.MINUS, q, t), 0.0, wave, 1.0, 1.0)
    plus = multi_diamond_phase(PulseScheme(Variant.PLUS, q, t), 0.0, wave, 1.0, 1.0)
    assert minus == pytest.approx(
        sum(v if i % 2 == 0 else -v for i, v in enumerate(terms)), rel=1e-12)
    assert plus == pytest.approx(sum(terms), rel=1e-12)


def test_differential_phase_zero_delay():
    scheme = PulseScheme(Variant.MINUS, Q=2, T=0.7)
    wave = DmWave(omega=1.0)
    assert differential_phase(scheme, 0.0, 0.0, wave, 1.0, 1.0) == 0.0
    with pytest.raises(DomainError):
        differential_phase(scheme, 0.0, -0.1, wave, 1.0, 1.0)


def test_differential_phase_pinned_by_quadrature():
    scheme = PulseScheme(Variant.MINUS, Q=2, T=0.7)
    wave = DmWave(omega=1.0, phi=0.0)
    value = differential_phase(scheme, 0.0, 0.3, wave, 1.0, 1.0)
    assert value == pytest.approx(-0.18107127295190278, abs=1e-11)


def test_differential_phase_vanishing_frequency():
    scheme = PulseScheme(Variant.PLUS, Q=2, T=0.7)
    value = differential_phase(scheme, 0.0, 0.3, DmWave(omega=1e-9), 1.0, 1.0)
    assert abs(value) < 1e-9


def test_rms_oracle_zero_coupling():
    scheme = PulseScheme(Variant.MINUS, Q=2, T=0.7)
    assert rms_signal_amplitude_oracle(scheme, 0.4, DmWave(omega=1.0), 0.0, 1.0) == 0.0


def test_rms_oracle_t0_invariance():
    scheme = PulseScheme(Variant.PLUS, Q=3, T=0.6)
    wave = DmWave(omega=1.2)
    a = rms_signal_amplitude_oracle(scheme, 0.4, wave, 1.0, 1.0, t0=0.0)
    b = rms_signal_amplitude_oracle(scheme, 0.4, wave, 1.0, 1.0, t0=17.3)
    assert a == pytest.approx(b, rel=1e-10)


def test_rms_oracle_small_delay_expansion():
    # Q = 1, omega*T = pi: amplitude approaches eps * 4 dOm tau_L sin^2(wT/2)
    omega = 1.0
    scheme = PulseScheme(Variant.MINUS, Q=1, T=math.pi / omega)
    for omega_tau in (1e-3, 1e-4):
        tau = omega_tau / omega
        value = rms_signal_amplitude_oracle(scheme, tau, DmWave(omega=omega), 1.0, 1.0)
        approx = 4.0 * tau * math.sin(omega * scheme.T / 2.0) ** 2
        assert value == pytest.approx(approx, rel=2.0 * omega_tau**2)
