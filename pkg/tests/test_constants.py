import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dmgrad.constants import (CODATA2018, PhysicalConstants,
                              energy_density_from_si, energy_density_to_si,
                              local_gravity)
from dmgrad.errors import DomainError


def test_planck_length_defining_relation():
    c = CODATA2018
    assert c.planck_length == pytest.approx(c.hbar / (c.planck_mass * c.c), rel=1e-12)
    # CODATA 2018 tabulates 1.616255e-35 m
    assert c.planck_length == pytest.approx(1.616255e-35, rel=1e-6)


def test_planck_length_tracks_overrides():
    c = PhysicalConstants(planck_mass=1e-8)
    assert c.planck_length == pytest.approx(c.hbar / (1e-8 * c.c), rel=1e-12)


def test_gravitational_constant_matches_codata():
    # hbar c / m_P^2 reproduces G to the precision of the rounded Planck mass
    assert CODATA2018.gravitational_constant == pytest.approx(6.6743e-11, rel=1e-5)


def test_energy_density_zero():
    assert energy_density_to_si(0.0) == 0.0


def test_energy_density_conversion_values():
    # 0.4 * 1.602176634e-10 / 1e-6, exact decimal arithmetic
    assert energy_density_to_si(0.4) == pytest.approx(6.408706536e-5, rel=1e-15)
    assert energy_density_to_si(1.0) == pytest.approx(1.602176634e-4, rel=1e-15)


def test_energy_density_negative_rejected():
    with pytest.raises(DomainError):
        energy_density_to_si(-0.1)
    with pytest.raises(DomainError):
        energy_density_from_si(-0.1)


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_energy_density_round_trip(value):
    assert energy_density_from_si(energy_density_to_si(value)) == pytest.approx(
        value, rel=1e-15)


def test_local_gravity_codata_earth():
    # independent route: G m_E/R_E^2 with the directly measured G
    expected = 6.6743e-11 * 5.9722e24 / 6.371e6**2
    g = local_gravity(5.9722e24, 6.371e6)
    assert g == pytest.approx(expected, rel=1e-5)
    assert g == pytest.approx(9.82, abs=5e-3)


def test_local_gravity_matches_g_form():
    c = CODATA2018
    for m, r in [(5.9722e24, 6.371e6), (1e23, 2e6), (3.3e24, 8.8e6)]:
        assert local_gravity(m, r) == pytest.approx(
            c.gravitational_constant * m / r**2, rel=1e-12)


def test_local_gravity_inverse_square():
    g1 = local_gravity(5.9722e24, 6.371e6)
    g2 = local_gravity(5.9722e24, 2 * 6.371e6)
    assert g2 == pytest.approx(g1 / 4.0, rel=1e-12)


def test_local_gravity_rejects_nonpositive():
    with pytest.raises(DomainError):
        local_gravity(0.0, 6.371e6)
    with pytest.raises(DomainError):
        local_gravity(5.9722e24, -1.0)


def test_derived_surface_gravity():
    assert CODATA2018.derived_surface_gravity() == pytest.approx(9.8203, abs=1e-3)


def test_constants_reject_nonpositive():
    with pytest.raises(DomainError):
        PhysicalConstants(c=-1.0)
