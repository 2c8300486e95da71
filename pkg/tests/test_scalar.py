from fractions import Fraction

import pytest
from hypothesis import given, settings

from algebra.scalar import Scalar, ScalarDivisionError
from tests.strategies import scalars


@settings(max_examples=100, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(x: Scalar, y: Scalar, z: Scalar) -> None:
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == Scalar.zero()
    assert x * Scalar.one() == x


@settings(max_examples=100, deadline=None)
@given(scalars(), scalars())
def test_conjugation_is_an_involutive_ring_map(x: Scalar, y: Scalar) -> None:
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()


def test_imaginary_unit_squares_to_minus_one() -> None:
    assert Scalar.imaginary() * Scalar.imaginary() == Scalar.constant(-1)


def test_parameters_are_real() -> None:
    kappa = Scalar.param("kappa")
    assert kappa.conj() == kappa
    assert (Scalar.imaginary() * kappa).conj() == -Scalar.imaginary() * kappa


def test_division_only_by_nonzero_constants() -> None:
    half = Scalar.one() / 2
    assert half == Scalar.constant(Fraction(1, 2))
    with pytest.raises(ScalarDivisionError):
        Scalar.one() / Scalar.param("sigma")
    with pytest.raises(ScalarDivisionError):
        Scalar.one() / 0


def test_limit_drops_terms_with_the_inverse_symbol() -> None:
    value = Scalar.one() + Scalar.param("kappa") * Scalar.param("rho") + Scalar.param("rho")
    assert value.limit("kappa") == Scalar.one() + Scalar.param("rho")
    assert value.limit("inv_rho") == Scalar.one()


def test_reflect_flips_odd_powers() -> None:
    kappa = Scalar.param("kappa")
    value = kappa + kappa * kappa
    assert value.reflect("kappa") == -kappa + kappa * kappa


def test_text_uses_inverse_parameter_form() -> None:
    assert (Scalar.imaginary() * Scalar.param("kappa")).to_text() == "i*(1/kappa)"
    assert Scalar.constant(Fraction(1, 2)).to_text() == "(1/2)"
    assert Scalar.zero().to_text() == "0"
    assert Scalar.constant(-1).to_text() == "-1"


def test_unknown_parameter_is_rejected() -> None:
    with pytest.raises(ValueError):
        Scalar.param("omega")


def test_coefficients_live_in_the_gaussian_rationals() -> None:
    from sympy.polys.domains import QQ_I

    third = Scalar.one() / 3
    assert third * 3 == Scalar.one()
    assert Scalar.coerce(QQ_I(1, 2)) == Scalar.constant(1, 2)
    mixed = Scalar.constant(Fraction(1, 2), -1) * Scalar.param("sigma")
    assert mixed.to_text() == "(1/2 - i)*(1/sigma)"
    assert (Scalar.imaginary() / 2).to_text() == "(i/2)"


def test_hash_agrees_with_equality() -> None:
    x = Scalar.param("kappa") + Scalar.constant(0, 1)
    y = Scalar.constant(0, 1) + Scalar.param("kappa")
    assert x == y
    assert len({x, y}) == 1
