from fractions import Fraction

import pytest

from wcurve.series import (
    PrecisionExceeded,
    Series,
    SingularJet,
    series_newton_solve,
)


def test_series_canonical_form_and_coeff_access():
    s = Series([0, 1, 0, 2, 0], lead=-2, prec=5)
    assert s.lead == -1
    assert s.valuation() == -1
    assert s.coeff(-1) == 1
    assert s.coeff(1) == 2
    assert s.coeff(3) == 0  # known zero inside the window
    with pytest.raises(PrecisionExceeded):
        s.coeff(5)


def test_series_zero_to_precision():
    z = Series.zero(7)
    assert z.is_zero()
    assert z.valuation() is None
    assert z.coeff(6) == 0
    with pytest.raises(PrecisionExceeded):
        z.coeff(7)


def test_series_addition_aligns_precision():
    a = Series.t_power(-1, 4) + Series.t_power(2, 4)
    b = Series.t_power(-1, 6, -1)
    c = a + b
    assert c.prec == 4
    assert c.coeff(-1) == 0
    assert c.coeff(2) == 1


def test_series_product_precision_window():
    # (t^-2 + ...known to t^3) * (t^1 + ...known to t^4): the product is
    # only trustworthy where both windows contribute.
    a = Series([1], lead=-2, prec=3)
    b = Series([1], lead=1, prec=4)
    p = a * b
    assert p.valuation() == -1
    assert p.prec == min(3 + 1, 4 - 2)


def test_series_geometric_inverse():
    one_minus_t = Series.from_dict({0: 1, 1: -1}, prec=6)
    inv = one_minus_t.inverse()
    assert [inv.coeff(k) for k in range(6)] == [1, 1, 1, 1, 1, 1]
    assert (one_minus_t * inv).coeff(0) == 1
    assert (one_minus_t * inv).coeff(3) == 0


def test_series_inverse_with_valuation_shift():
    s = Series.from_dict({-3: 2, -2: 2}, prec=2)
    inv = s.inverse()
    assert inv.valuation() == 3
    assert inv.coeff(3) == Fraction(1, 2)
    prod = s * inv
    assert prod.coeff(0) == 1
    for k in range(1, 4):
        assert prod.coeff(k) == 0


def test_series_pow_and_negative_pow():
    t = Series.t_power(1, 8)
    u = (1 + t).truncate(6)
    sq = u**2
    assert sq.coeff(0) == 1 and sq.coeff(1) == 2 and sq.coeff(2) == 1
    inv2 = u**-2
    assert inv2.coeff(0) == 1
    assert inv2.coeff(1) == -2
    assert inv2.coeff(2) == 3


def test_series_derivative():
    s = Series.from_dict({-2: 1, 0: 5, 3: 2}, prec=5)
    d = s.derivative()
    assert d.coeff(-3) == -2
    assert d.coeff(2) == 6
    assert d.prec == 4


def test_newton_solve_square_root_exact_leading():
    # y^2 = x with x = t^-2 exactly: y = t^-1 on the nose.
    x = Series.t_power(-2, 9)
    sol = series_newton_solve(
        residuals=[lambda u: u[0] * u[0] - x],
        jacobians=[[lambda u: 2 * u[0]]],
        leading=[(-1, 1)],
        order=8,
    )
    y = sol[0]
    assert y.valuation() == -1
    assert y.coeff(-1) == 1
    for k in range(0, 7):
        assert y.coeff(k) == 0


def test_newton_solve_binomial_series():
    # y^2 = x^3 + 1 with x = t^-2: y = t^-3 (1 + t^6/2 - t^12/8 + ...).
    order = 14
    x = Series.t_power(-2, -2 + order + 1)
    sol = series_newton_solve(
        residuals=[lambda u: u[0] * u[0] - (x**3 + 1)],
        jacobians=[[lambda u: 2 * u[0]]],
        leading=[(-3, 1)],
        order=order,
    )
    y = sol[0]
    assert y.coeff(-3) == 1
    assert y.coeff(3) == Fraction(1, 2)
    assert y.coeff(9) == Fraction(-1, 8)
    assert y.coeff(-2) == 0 and y.coeff(0) == 0


def test_newton_solve_order_zero_echoes_leading():
    x = Series.t_power(-2, 3)
    sol = series_newton_solve(
        residuals=[lambda u: u[0] * u[0] - x],
        jacobians=[[lambda u: 2 * u[0]]],
        leading=[(-1, 1)],
        order=0,
    )
    assert sol[0].terms() == [(-1, Fraction(1))]


def test_newton_solve_rejects_singular_jacobian():
    # Residual u^2 with leading term t^0: jacobian 2u has a nonzero window
    # but the leading terms do not satisfy the equation at its own order.
    with pytest.raises(SingularJet):
        series_newton_solve(
            residuals=[lambda u: u[0] * u[0] + 1],
            jacobians=[[lambda u: 2 * u[0]]],
            leading=[(0, 1)],
            order=3,
        )


def test_newton_solve_rejects_wrong_leading_coefficient():
    x = Series.t_power(-2, 6)
    with pytest.raises(SingularJet):
        series_newton_solve(
            residuals=[lambda u: u[0] * u[0] - x],
            jacobians=[[lambda u: 2 * u[0]]],
            leading=[(-1, 2)],  # 4 != 1 at order t^-2
            order=4,
        )
