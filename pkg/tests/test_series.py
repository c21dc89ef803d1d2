from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from blockspectrum.series import PowerSeries, _kronecker_mul, _schoolbook_mul, horner, poly_pow

ints = st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=60)


def test_basic_arithmetic():
    a = PowerSeries([1, 2, 3], 4)
    b = PowerSeries([0, 1], 4)
    assert list(a + b) == [1, 3, 3, 0]
    assert list(a * b) == [0, 1, 2, 3]
    assert list(a - a) == [0, 0, 0, 0]
    assert list(2 * a) == [2, 4, 6, 0]


def test_geometric_reciprocal():
    one_minus_z = PowerSeries([1, -1], 10)
    assert list(one_minus_z.reciprocal()) == [1] * 10


def test_rational_coefficients():
    a = PowerSeries([2, 1], 5)
    inv = a.reciprocal()
    assert inv[0] == Fraction(1, 2)
    assert inv * a == PowerSeries.one(5)


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        PowerSeries([1], 3) + PowerSeries([1], 4)


def test_non_unit_reciprocal_rejected():
    with pytest.raises((ValueError, ZeroDivisionError)):
        PowerSeries([0, 1], 5).reciprocal()


def test_compose_and_derivative():
    z = PowerSeries.monomial(1, 8)
    geo = PowerSeries([1] * 8, 8)
    # 1/(1 - 2z) from composing the geometric series with 2z
    assert list(geo.compose(2 * z)) == [2**k for k in range(8)]
    assert list(geo.derivative())[:3] == [1, 2, 3]


def test_horner_and_poly_pow():
    z = PowerSeries.monomial(1, 6)
    assert list(horner([1, 2, 1], z)) == [1, 2, 1, 0, 0, 0]
    assert poly_pow([1, 1], 3) == [1, 3, 3, 1]


@settings(max_examples=60, deadline=None)
@given(ints, ints)
def test_kronecker_matches_schoolbook(a, b):
    order = len(a) + len(b)
    assert _kronecker_mul(a, b, order) == _schoolbook_mul(a, b, order)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=40))
def test_reciprocal_roundtrip(coeffs):
    coeffs[0] = 1
    s = PowerSeries(coeffs, len(coeffs))
    assert s * s.reciprocal() == PowerSeries.one(len(coeffs))
    assert s.reciprocal().is_integral()


@settings(max_examples=40, deadline=None)
@given(ints, ints, ints)
def test_ring_laws(a, b, c):
    n = 20
    A, B, C = (PowerSeries(x[:n], n) for x in (a, b, c))
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
