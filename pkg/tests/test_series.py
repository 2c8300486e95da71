import pytest

from algebra.freealg import NCPoly
from algebra.scalar import Scalar
from algebra.series import (
    FormalSeries,
    GroupLawResidualError,
    exp_series,
    group_law_associativity,
    group_law_extract,
    hyperbolic_factor_series,
    matrix_exp_2x2,
    scalar_matrix,
    series_mul,
    verify_conjugation_closed_form,
    verify_inverse_law,
)
from hopf.presets import EXPONENTIAL_ORDER, build_presentation


@pytest.mark.parametrize("name", ["group_A", "group_B"])
def test_inverse_law_for_every_generator(name: str) -> None:
    p = build_presentation(name)
    assert all(verify_inverse_law(p, g, 4) for g in p.generators)


def test_exp_series_rejects_a_constant_term() -> None:
    p = build_presentation("group_B")
    with pytest.raises(ValueError):
        exp_series(p, "c", p.generator("a") + NCPoly.one(p.generators), 3)


def test_series_products_truncate_at_the_smaller_degree() -> None:
    universe = ("a", "tau", "v")
    c = FormalSeries.coordinate("c", 3, universe)
    d = FormalSeries.coordinate("d", 2, universe)
    product = series_mul(c, series_mul(c, d))
    assert product.degree == 2
    assert product.is_zero()
    assert series_mul(c, d).coefficient({"c": 1, "d": 1}) == NCPoly.one(universe)


def test_group_b_conjugation_matches_the_exponential() -> None:
    report = verify_conjugation_closed_form(build_presentation("group_B"), 6)
    assert report.passed, report.mismatches
    ode_deltas = [key for key in report.deltas if key.startswith("ode_matrix")]
    assert ode_deltas == ["ode_matrix[tau,tau]"]
    assert any(key.startswith("closed_form_order_") for key in report.deltas)


def test_hyperbolic_factorisation_of_the_matrix_exponential() -> None:
    d = Scalar.param("sigma")
    b = -Scalar.param("lambda")
    c = -Scalar.param("alpha")
    matrix = scalar_matrix([[d, b], [c, d]])
    off = scalar_matrix([[0, b], [c, 0]])
    true_form = hyperbolic_factor_series(d, off, b * c, True, 5)
    exponential = matrix_exp_2x2(matrix, 5)
    for n in range(6):
        for i in range(2):
            for j in range(2):
                assert exponential[n][i, j] == true_form[n][i, j]


def test_matrix_exponential_of_zero_is_the_identity() -> None:
    series = matrix_exp_2x2(scalar_matrix([[0, 0], [0, 0]]), 3)
    assert series[0][0, 0] == Scalar.one() and series[0][0, 1] == Scalar.zero()
    assert all(series[n][i, j] == Scalar.zero() for n in range(1, 4) for i in range(2) for j in range(2))


def test_group_b_law_adds_the_a_coordinates() -> None:
    law = group_law_extract(build_presentation("group_B"), EXPONENTIAL_ORDER["B"], 3)
    universe = law.residual.universe
    composed = law.compositions["a"]
    assert composed.coefficient({"mu": 1}) == NCPoly.one(universe)
    assert composed.coefficient({"mu'": 1}) == NCPoly.one(universe)
    assert len(list(composed.items())) == 2
    assert group_law_associativity(law) == []


def test_group_a_is_not_a_product_of_exponentials() -> None:
    with pytest.raises(GroupLawResidualError):
        group_law_extract(build_presentation("group_A"), EXPONENTIAL_ORDER["A"], 3)
