import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dipole1d.units import (
    ATOMIC_UNITS,
    CODATA,
    AtomicQuantity,
    ConstantSet,
    DimensionMismatchError,
    alpha_from_p,
    bohr_radius,
    dipole_atomic_to_si,
    dipole_si_to_atomic,
    hartree_energy,
    xi_from_energy,
)


def test_default_bohr_radius():
    # independent regrouping of the same CODATA product as a cross-check
    c = CODATA
    expected = 4.0 * math.pi * c.epsilon0 * (c.hbar / c.q_electron) ** 2 / c.m_electron
    a = bohr_radius(c)
    assert a == pytest.approx(expected, rel=1e-14)
    assert a == pytest.approx(5.29e-11, rel=1e-3)
    assert 5.0e-11 < a < 5.6e-11


def test_bohr_radius_atomic_units_identity():
    assert bohr_radius(ATOMIC_UNITS) == pytest.approx(1.0, rel=1e-12)


def test_bohr_radius_inverse_charge_scaling():
    for c in (CODATA, ATOMIC_UNITS):
        q = c.q_electron
        base = bohr_radius(c, q)
        assert bohr_radius(c, 2 * q) == pytest.approx(base / 2, rel=1e-13)
        assert bohr_radius(c, 4 * q) == pytest.approx(base / 4, rel=1e-13)


def test_bohr_radius_rejects_bad_charge():
    with pytest.raises(ValueError):
        bohr_radius(CODATA, 0.0)
    with pytest.raises(ValueError):
        bohr_radius(CODATA, -1.0)


def test_alpha_from_p_atomic():
    assert alpha_from_p(ATOMIC_UNITS, 0.125) == pytest.approx(0.25, rel=1e-14)
    assert alpha_from_p(ATOMIC_UNITS, 1.0) == pytest.approx(2.0, rel=1e-14)


def test_alpha_from_p_headline_si_value():
    # the published rounded value lands within 1% of coupling 1/4
    assert alpha_from_p(CODATA, 1.052e-30) == pytest.approx(0.25, rel=1e-2)


def test_alpha_from_p_rejects_nonpositive():
    with pytest.raises(ValueError):
        alpha_from_p(CODATA, 0.0)
    with pytest.raises(ValueError):
        alpha_from_p(CODATA, -1e-30)


def test_xi_from_energy_values():
    assert xi_from_energy(ATOMIC_UNITS, -0.5) == pytest.approx(1.0, rel=1e-14)
    assert xi_from_energy(ATOMIC_UNITS, 0.0) == 0.0
    assert xi_from_energy(ATOMIC_UNITS, 1.0) == pytest.approx(-2.0, rel=1e-14)


@given(st.floats(-10, 10), st.floats(1e-6, 10))
def test_xi_from_energy_strictly_decreasing(e, de):
    assert xi_from_energy(ATOMIC_UNITS, e + de) < xi_from_energy(ATOMIC_UNITS, e)


def test_dipole_unit_value():
    assert dipole_atomic_to_si(CODATA, 1.0) == pytest.approx(8.478e-30, rel=1e-3)
    assert dipole_atomic_to_si(CODATA, 0.0) == 0.0


def test_dipole_round_trip_20_magnitudes():
    for k in range(20):
        p = 10.0 ** (-35 + 2 * k)
        rt = dipole_si_to_atomic(CODATA, dipole_atomic_to_si(CODATA, p))
        assert abs(rt - p) <= 1e-12 * p
    rt = dipole_si_to_atomic(CODATA, dipole_atomic_to_si(CODATA, 0.125))
    assert abs(rt - 0.125) <= 1e-12


def test_hartree_energy_value():
    assert hartree_energy(CODATA) == pytest.approx(4.3597e-18, rel=1e-3)
    assert hartree_energy(ATOMIC_UNITS) == pytest.approx(1.0, rel=1e-12)


def test_constant_set_rejects_nonpositive():
    with pytest.raises(ValueError):
        ConstantSet(hbar=0.0)
    with pytest.raises(ValueError):
        ConstantSet(epsilon0=-1.0)
    with pytest.raises(ValueError):
        ConstantSet(m_electron=float("nan"))


def test_atomic_quantity_same_dimension_arithmetic():
    a = AtomicQuantity(1.5, "energy")
    b = AtomicQuantity(-0.5, "energy")
    assert (a + b).value == 1.0
    assert (a + b).dimension == "energy"
    assert (a - b).dimension == "energy"
    assert (-a).value == -1.5


def test_atomic_quantity_rejects_cross_dimension():
    a = AtomicQuantity(1.0, "energy")
    b = AtomicQuantity(1.0, "length")
    with pytest.raises(DimensionMismatchError):
        a + b
    with pytest.raises(DimensionMismatchError):
        a - b


def test_atomic_quantity_no_unit_algebra():
    a = AtomicQuantity(1.0, "energy")
    with pytest.raises(TypeError):
        a * a
    with pytest.raises(TypeError):
        a / a


@settings(max_examples=200)
@given(st.floats(-1e6, 1e6), st.floats(-100, 100, allow_nan=False))
def test_atomic_quantity_scalar_ops_preserve_tag(v, s):
    q = AtomicQuantity(v, "dipole_moment")
    assert (q * s).dimension == "dipole_moment"
    assert (q * s).value == v * s
    assert (2.0 * q).value == 2.0 * v


def test_atomic_quantity_rejects_unknown_dimension():
    with pytest.raises(ValueError):
        AtomicQuantity(1.0, "volume")
