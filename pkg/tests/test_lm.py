import pytest

from algebra.freealg import NCPoly, TensorPoly
from algebra.scalar import Scalar
from algebra.series import scalar_matrix
from hopf.lm import (
    LM_LAYOUT,
    LMPreconditionError,
    carrier_presentation,
    compare_coproducts,
    derive_matrices,
    lm_cocommutator,
    lm_coproduct,
    random_trials,
)
from hopf.presets import build_preset


def test_random_commuting_families_give_coassociative_coproducts() -> None:
    results = random_trials(trials=4, degree=3, seed=7)
    assert [r.name for r in results] == ["lm_random_00", "lm_random_01", "lm_random_02", "lm_random_03"]
    assert all(r.passed for r in results), [r.witness for r in results if not r.passed]


def test_dual_a_coproduct_comes_from_its_matrices() -> None:
    h = build_preset("dual_A", 4)
    h_list, x_vec = LM_LAYOUT["A"]
    mu, nu = derive_matrices(h, h_list, x_vec)
    assert mu[0][0, 0] == -Scalar.param("kappa")
    assert mu[0][0, 1] == -Scalar.param("rho")
    assert mu[0][1, 0].is_zero()
    assert all(entry.is_zero() for entry in nu[0].flat)

    result = lm_coproduct(h.presentation, h_list, x_vec, mu, nu, h.degree)
    match = compare_coproducts(result, h.coproducts)
    assert match.passed, match.witness


def test_cocommutator_is_antisymmetric() -> None:
    h = build_preset("dual_A", 3)
    h_list, x_vec = LM_LAYOUT["A"]
    mu, nu = derive_matrices(h, h_list, x_vec)
    cocommutators = lm_cocommutator(lm_coproduct(h.presentation, h_list, x_vec, mu, nu, h.degree))
    assert cocommutators["H"].is_zero()
    universe = h.generators
    H = NCPoly.generator("H", universe)
    P = NCPoly.generator("P", universe)
    expected = (TensorPoly.pure(H, P) - TensorPoly.pure(P, H)) * -Scalar.param("kappa")
    assert cocommutators["P"] == expected


def test_non_commuting_matrices_are_rejected() -> None:
    carrier = carrier_presentation(1, 2)
    upper = scalar_matrix([[0, 1], [0, 0]])
    lower = scalar_matrix([[0, 0], [1, 0]])
    with pytest.raises(LMPreconditionError):
        lm_coproduct(carrier, ("H1",), ("X1", "X2"), [upper], [lower], 3)


def test_non_commuting_generators_are_rejected() -> None:
    h = build_preset("dual_A", 3)
    zero = scalar_matrix([[0]])
    with pytest.raises(LMPreconditionError):
        lm_coproduct(h.presentation, ("H", "K"), ("P",), [zero, zero], [zero, zero], 3)


def test_one_matrix_per_generator() -> None:
    carrier = carrier_presentation()
    identity = scalar_matrix([[1, 0], [0, 1]])
    with pytest.raises(LMPreconditionError):
        lm_coproduct(carrier, ("H1", "H2"), ("X1", "X2"), [identity], [identity, identity], 3)


def test_dual_b_matrices_square_to_a_scalar() -> None:
    h = build_preset("dual_B", 4)
    h_list, x_vec = LM_LAYOUT["B"]
    mu, nu = derive_matrices(h, h_list, x_vec)
    inv_sigma, inv_alpha, inv_lambda = (Scalar.param(s) for s in ("sigma", "alpha", "lambda"))
    assert all(entry.is_zero() for entry in mu[0].flat)
    assert nu[0].tolist() == [[-inv_sigma, -inv_alpha], [-inv_lambda, inv_sigma]]
    square = inv_sigma * inv_sigma + inv_alpha * inv_lambda
    product = nu[0].dot(nu[0])
    assert product.tolist() == [[square, Scalar.zero()], [Scalar.zero(), square]]

    result = lm_coproduct(h.presentation, h_list, x_vec, mu, nu, h.degree)
    match = compare_coproducts(result, h.coproducts)
    assert match.passed, match.witness
