from __future__ import annotations

from fractions import Fraction

import pytest

from artifact.errors import ArtifactError
from artifact.exact_math import (
    Matrix,
    Polynomial,
    RationalFunction,
    format_rational,
    parse_rational,
    permutation_matrix,
    poly_divide_by_q_minus_1_power,
    poly_order_at_one,
)

F_TREFOIL = Polynomial([1, -2, 2, -2, 1])


def test_polynomial_normal_form():
    assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial([0, 0]).coeffs == ()
    assert Polynomial().is_zero()


def test_polynomial_arithmetic():
    q = Polynomial.q()
    assert (q - 1) ** 2 == Polynomial([1, -2, 1])
    assert (q + 1) * (q - 1) == q**2 - 1
    assert F_TREFOIL(2) == 5
    assert F_TREFOIL(1) == 0


def test_render_both_orders():
    assert F_TREFOIL.render() == "1 - 2q + 2q^2 - 2q^3 + q^4"
    assert F_TREFOIL.render(ascending=False) == "q^4 - 2q^3 + 2q^2 - 2q + 1"
    assert Polynomial([0, -1]).render() == "-q"
    assert Polynomial().render() == "0"


def test_divide_by_q_minus_1_power():
    one = poly_divide_by_q_minus_1_power(Polynomial([1, -2, 1]), 2)
    assert one.numerator == Polynomial([1]) and one.denom_power == 0
    g = poly_divide_by_q_minus_1_power(F_TREFOIL, 2)
    assert g.numerator == Polynomial([1, 0, 1]) and g.denom_power == 0
    h = poly_divide_by_q_minus_1_power(Polynomial([1, -1, 1]), 1)
    assert h.numerator == Polynomial([1, -1, 1]) and h.denom_power == 1


def test_order_at_one():
    assert poly_order_at_one(Polynomial([1, 0, 1])) == 0
    assert poly_order_at_one(Polynomial([1, -2, 1])) == 2
    # q^3 - q^2 = q^2 (q - 1)
    assert poly_order_at_one(Polynomial([0, 0, -1, 1])) == 1
    with pytest.raises(ArtifactError, match="undefined order"):
        poly_order_at_one(Polynomial())


def test_rational_function_equality_and_order():
    a = RationalFunction(Polynomial([1, -1, 1]), 1)
    b = RationalFunction(Polynomial([1, -1, 1]) * Polynomial([-1, 1]), 2)
    assert a == b
    assert a.order_at_one() == -1
    assert RationalFunction(Polynomial([1]), 1).render() == "1/(q - 1)"


def test_json_round_trip():
    assert Polynomial.from_json(F_TREFOIL.to_json()) == F_TREFOIL
    g = RationalFunction(Polynomial([1, -1, 1]), 1)
    assert RationalFunction.from_json(g.to_json()) == g


def test_rational_parsing():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"


def test_matrix_inverse_and_determinant():
    m = Matrix([[2, 1], [1, 1]])
    assert m.determinant() == 1
    assert m * m.inverse() == Matrix.identity(2)
    p = permutation_matrix([2, 0, 1])
    assert p.determinant() in (1, -1)
    assert p * p.transpose() == Matrix.identity(3)
