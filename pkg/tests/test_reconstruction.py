import pytest

from algebra.freealg import NCPoly, TensorPoly
from algebra.scalar import Scalar
from duality.reconstruction import (
    DualityEngine,
    axiom_antipode,
    basis_convention_record,
    exponential_star_check,
    native_basis_stars,
)
from hopf.checks import check_star, run_hopf_checks
from hopf.presets import DUAL_GRADES, build_preset

I = Scalar.imaginary()
UNIVERSE = ("H", "P", "K")


def _gen(name: str) -> NCPoly:
    return NCPoly.generator(name, UNIVERSE)


@pytest.fixture(scope="module")
def dual_a():
    return DualityEngine.for_family("A", 4).reconstruct_hopf("dual_A_reconstructed")


@pytest.fixture(scope="module")
def dual_b():
    return DualityEngine.for_family("B", 4).reconstruct_hopf("dual_B_reconstructed")


def test_engine_recovers_dual_words_from_their_pairings() -> None:
    engine = DualityEngine.for_family("A", 3)
    for word in engine.pairing.dual_monomials(3):
        fv = engine.functional(lambda w, word=word: engine.pairing.pair_word(word, w))
        assert engine.reconstruct(fv) == NCPoly.monomial(word, 1, UNIVERSE)


def test_family_a_commutators(dual_a) -> None:
    p = dual_a.presentation
    P = _gen("P")
    assert p.bracket("H", "P").is_zero()
    assert p.bracket("K", "H") == P * I
    assert p.bracket("K", "P") == P * P * (-I * Scalar.param("kappa") / 2)


def test_family_a_structure_maps(dual_a) -> None:
    H = _gen("H")
    one = NCPoly.one(UNIVERSE)
    assert dual_a.coproducts["H"] == TensorPoly.pure(H, one) + TensorPoly.pure(one, H)
    assert dual_a.antipodes["H"] == -H
    assert dual_a.stars["H"] == H
    assert dual_a.stars["P"] == _gen("P")
    assert dual_a.stars["K"] == _gen("K") - _gen("P") * (I * Scalar.param("kappa"))
    assert check_star(dual_a).passed
    assert all(dual_a.counits[g].is_zero() for g in UNIVERSE)


def test_family_b_commutators(dual_b) -> None:
    p = dual_b.presentation
    assert p.bracket("K", "P").is_zero()
    assert p.bracket("H", "P").is_zero()
    assert p.bracket("K", "H") == _gen("P") * I


@pytest.mark.parametrize("fixture", ["dual_a", "dual_b"])
def test_reconstructed_structures_pass_every_axiom(fixture: str, request) -> None:
    h = request.getfixturevalue(fixture)
    failures = [(r.name, r.witness) for r in run_hopf_checks(h) if not r.passed]
    assert failures == []


def test_axiom_antipode_matches_the_preset() -> None:
    h = build_preset("dual_A", 3)
    solved = axiom_antipode(h)
    assert solved == {g: h.normal(h.antipodes[g]) for g in h.generators}


def test_axiom_antipode_needs_a_degree() -> None:
    with pytest.raises(ValueError):
        axiom_antipode(build_preset("group_A"))


def test_engine_needs_a_positive_degree() -> None:
    with pytest.raises(ValueError):
        DualityEngine.for_family("A", 0)


@pytest.mark.parametrize("name", ["group_A", "group_B"])
def test_group_element_star_condition(name: str) -> None:
    result = exponential_star_check(build_preset(name), 3)
    assert result.passed, result.witness
    assert int(result.details["coefficients"]) > 1


def test_basis_convention_is_informational() -> None:
    result = basis_convention_record(2)
    assert result.passed
    assert result.details["exponential_order"] == "a < v < tau"
    assert result.details["native_order"] == "tau < a < v"
    assert {"Delta(H)", "Delta(P)", "Delta(K)"} <= set(result.details)


def test_family_a_stars_are_hermitian_in_the_tau_a_v_basis() -> None:
    stars = native_basis_stars(3)
    assert stars == {g: _gen(g) for g in UNIVERSE}


def test_family_b_coproduct_coefficients(dual_b) -> None:
    delta_h, delta_k = dual_b.coproducts["H"], dual_b.coproducts["K"]
    assert delta_h.coefficient((("H",), ("P",))) == -Scalar.param("sigma")
    assert delta_h.coefficient((("K",), ("P",))) == -Scalar.param("alpha")
    assert delta_k.coefficient((("K",), ("P",))) == Scalar.param("sigma")
    assert delta_k.coefficient((("H",), ("P",))) == -Scalar.param("lambda")


def test_dual_b_preset_is_the_reconstruction(dual_b) -> None:
    preset = build_preset("dual_B", 4)
    assert preset.presentation.bracket("K", "H") == dual_b.presentation.bracket("K", "H")
    for g in UNIVERSE:
        assert dual_b.coproducts[g] == preset.coproducts[g].truncate(4, DUAL_GRADES), g
        derived = dual_b.normal(dual_b.antipodes[g]).truncate(4, DUAL_GRADES)
        assert derived == preset.normal(preset.antipodes[g]).truncate(4, DUAL_GRADES), g
