from pathlib import Path

import pytest

from algebra.normalize import Presentation
from hopf.checks import check_star, run_hopf_checks
from hopf.limits import parameters, take_limit, take_limits
from hopf.presets import GROUP_HOPF, PRESENTATIONS, build_preset, presentation_from_texts
from hopf.spec import HopfSpec
from utils.spec_loader import load_spec_file

DATA = Path(__file__).resolve().parents[1] / "data"


def _failures(h: HopfSpec) -> list:
    return [(r.name, r.witness) for r in run_hopf_checks(h) if not r.passed]


@pytest.mark.parametrize("name", ["group_A", "group_B"])
def test_group_presets_pass_every_axiom(name: str) -> None:
    assert _failures(build_preset(name)) == []


@pytest.mark.parametrize("name", ["dual_A", "dual_B"])
def test_dual_presets_pass_every_axiom(name: str) -> None:
    h = build_preset(name, 4)
    assert h.truncated
    assert _failures(h) == []


@pytest.mark.parametrize("filename", ["galilei_classical.alg", "heisenberg_primitive.alg"])
def test_sample_files_pass_every_axiom(filename: str) -> None:
    loaded = load_spec_file(DATA / filename)
    assert loaded.hopf is not None
    assert _failures(loaded.hopf) == []


def test_dual_presets_need_a_degree() -> None:
    with pytest.raises(ValueError):
        build_preset("dual_A", None)


def test_antipode_square_is_not_the_identity_on_group_a() -> None:
    h = build_preset("group_A")
    square = {r.name: r for r in run_hopf_checks(h)}["antipode_square"]
    assert square.details["involutive"] == "False"
    assert h.antipode_square("a") == h.interpreter().evaluate_text("a - (i/kappa)*v")

    limit = take_limit(h, "kappa")
    square = {r.name: r for r in run_hopf_checks(limit)}["antipode_square"]
    assert square.details["involutive"] == "True"


def test_inverse_antipode_undoes_the_antipode() -> None:
    h = build_preset("group_A")
    for g in h.generators:
        image = h.antipode(h.presentation.generator(g))
        assert h.inverse_antipode(image) == h.presentation.generator(g)


def test_limits_name_and_remove_the_parameter() -> None:
    h = build_preset("group_A")
    assert parameters(h) == {"inv_kappa", "inv_rho"}
    limit = take_limit(h, "rho")
    assert limit.name == "group_A[rho->inf]"
    assert parameters(limit) == {"inv_kappa"}
    assert parameters(take_limits(h, ("kappa", "rho"))) == set()
    with pytest.raises(ValueError):
        take_limit(limit, "rho")


def test_non_hermitian_star_is_caught() -> None:
    entry = PRESENTATIONS["group_B"]
    p: Presentation = presentation_from_texts("rotated", entry["generators"], entry["relations"], entry["weights"])
    stars = dict(GROUP_HOPF["stars"], tau="i*tau")
    h = HopfSpec.from_texts(
        "rotated", p, GROUP_HOPF["coproducts"], GROUP_HOPF["antipodes"], GROUP_HOPF["counits"], stars
    )
    result = check_star(h)
    assert not result.passed
    assert "tau" in result.witness


def test_star_with_imaginary_images_is_accepted() -> None:
    p = presentation_from_texts("twisted", ("x", "y"), {("y", "x"): "0"}, {"x": 1, "y": 1})
    h = HopfSpec.from_texts(
        "twisted",
        p,
        {"x": "x (x) I + I (x) x", "y": "y (x) I + I (x) y + i*x (x) x"},
        {"x": "-x", "y": "-y + i*x^2"},
        {"x": "0", "y": "0"},
        {"x": "i*x", "y": "y"},
    )
    result = check_star(h)
    assert result.passed, result.witness
