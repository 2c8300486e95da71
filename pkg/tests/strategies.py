from fractions import Fraction

from hypothesis import strategies as st

from algebra.freealg import NCPoly
from algebra.scalar import PARAMETERS, Scalar

SYMBOLS = sorted(PARAMETERS.values())[:5]


@st.composite
def scalars(draw, max_terms: int = 3) -> Scalar:
    total = Scalar.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        re = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        im = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        term = Scalar.constant(re, im)
        for symbol in draw(st.lists(st.sampled_from(SYMBOLS), max_size=2)):
            term = term * Scalar.param(symbol)
        total = total + term
    return total


@st.composite
def polys(draw, universe=("x", "y"), max_terms: int = 3, max_length: int = 3) -> NCPoly:
    total = NCPoly.zero(universe)
    for _ in range(draw(st.integers(0, max_terms))):
        word = tuple(draw(st.lists(st.sampled_from(universe), max_size=max_length)))
        coef = draw(st.integers(-3, 3)) + Scalar.imaginary() * Fraction(draw(st.integers(-2, 2)), 2)
        total = total + NCPoly.monomial(word, coef, universe)
    return total
