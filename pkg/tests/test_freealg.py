import pytest
from hypothesis import given, settings

from algebra.freealg import (
    ArityError,
    NCPoly,
    TensorPoly,
    UniverseMismatchError,
    apply_legwise,
    flip,
    word_text,
)
from algebra.scalar import Scalar
from tests.strategies import polys

UNIVERSE = ("x", "y")


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), polys())
def test_multiplication_is_associative_and_distributive(a: NCPoly, b: NCPoly, c: NCPoly) -> None:
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=100, deadline=None)
@given(polys(), polys())
def test_truncation_commutes_with_products(a: NCPoly, b: NCPoly) -> None:
    for n in range(4):
        assert (a * b).truncate(n) == (a.truncate(n) * b.truncate(n)).truncate(n)


def test_words_do_not_commute() -> None:
    x = NCPoly.generator("x", UNIVERSE)
    y = NCPoly.generator("y", UNIVERSE)
    assert x * y != y * x
    assert (x * y - y * x).coefficient(("x", "y")) == Scalar.one()


def test_universes_must_agree() -> None:
    x = NCPoly.generator("x", UNIVERSE)
    z = NCPoly.generator("z", ("z",))
    with pytest.raises(UniverseMismatchError):
        x + z
    with pytest.raises(UniverseMismatchError):
        NCPoly.generator("z", UNIVERSE)


def test_word_text_groups_repeated_letters() -> None:
    assert word_text(()) == "I"
    assert word_text(("x", "x", "y")) == "x^2*y"


def test_pure_tensor_expands_each_leg() -> None:
    x = NCPoly.generator("x", UNIVERSE)
    y = NCPoly.generator("y", UNIVERSE)
    t = TensorPoly.pure(x + y, NCPoly.one(UNIVERSE))
    assert t.arity == 2
    assert t.coefficient((("x",), ())) == Scalar.one()
    assert t.coefficient((("y",), ())) == Scalar.one()
    assert flip(t).coefficient(((), ("y",))) == Scalar.one()


def test_tensor_product_multiplies_legwise() -> None:
    x = NCPoly.generator("x", UNIVERSE)
    y = NCPoly.generator("y", UNIVERSE)
    product = TensorPoly.pure(x, y) * TensorPoly.pure(y, x)
    assert product == TensorPoly.pure(x * y, y * x)


def test_arity_is_bounded() -> None:
    with pytest.raises(ArityError):
        TensorPoly.zero(4)
    with pytest.raises(ArityError):
        TensorPoly.zero(0)
    with pytest.raises(ArityError):
        TensorPoly.pure(NCPoly.one()) * NCPoly.one()


def test_apply_legwise_can_split_and_contract() -> None:
    x = NCPoly.generator("x", UNIVERSE)
    one = NCPoly.one(UNIVERSE)
    t = TensorPoly.pure(x, x)

    def split(p: NCPoly) -> TensorPoly:
        return TensorPoly.pure(p, one) + TensorPoly.pure(one, p)

    split_first = apply_legwise(split, t, 0)
    assert split_first.arity == 3
    assert split_first.coefficient((("x",), (), ("x",))) == Scalar.one()

    contracted = apply_legwise(lambda p: p.constant_term(), TensorPoly.pure(one, x), 0)
    assert contracted.as_poly() == x
    with pytest.raises(ArityError):
        apply_legwise(split, t, 2)


def test_text_rendering() -> None:
    x = NCPoly.generator("x", UNIVERSE)
    y = NCPoly.generator("y", UNIVERSE)
    value = x * y * Scalar.imaginary() - NCPoly.one(UNIVERSE)
    assert value.to_text() == "-1 + i*x*y"
    assert TensorPoly.pure(x, NCPoly.one(UNIVERSE)).to_text() == "x (x) I"
