import pytest

from blockspectrum.algebraic import BivariatePolynomial, build_Q
from blockspectrum.params import StructureParams, in_scope_params
from blockspectrum.series import PowerSeries
from blockspectrum.system import solve_system

P = StructureParams


def test_secondary_structure_quadratic():
    Q = build_Q(P(0, 1, 2))
    X = BivariatePolynomial.monomial(0, 1)
    want = (
        BivariatePolynomial.monomial(2, 2)
        - BivariatePolynomial.z_poly([1, -1, 1]) * X
        + BivariatePolynomial.monomial(0, 0)
    )
    assert Q == want


@pytest.mark.parametrize("p", in_scope_params())
def test_degree_and_origin(p):
    Q = build_Q(p)
    assert Q.deg_x == (2 if p.gamma == 0 else 12 * p.gamma - 2)
    assert Q(0, 1) == 0


def test_vanishes_on_G_beyond_validation_order():
    p = P(2, 1, 1)
    G = solve_system(p, 260).G
    assert build_Q(p).eval_series(G) == PowerSeries.zero(260)


def test_polynomial_arithmetic():
    a = BivariatePolynomial({(1, 0): 2, (0, 2): 1})
    b = BivariatePolynomial({(0, 1): 3})
    assert (a * b).terms == {(1, 1): 6, (0, 3): 3}
    assert (a - a).terms == {}
    assert (a ** 2)(2, 3) == a(2, 3) ** 2
    assert a.diff_x().terms == {(0, 1): 2}
    assert a.diff_z().terms == {(0, 0): 2}
    assert a.x_coefficients() == [[0, 2], [0, 0], [1, 0]]
