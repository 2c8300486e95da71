import pytest

from algebra.freealg import NCPoly, TensorPoly
from algebra.scalar import Scalar
from hopf.presets import build_preset
from utils.interpreter import Interpreter
from utils.parsing import ParseError, ResolutionError


@pytest.fixture(scope="module")
def group_a():
    return build_preset("group_A").interpreter()


@pytest.fixture(scope="module")
def dual_a():
    return build_preset("dual_A", 4).interpreter()


def test_relation_holds_after_normal_ordering(group_a: Interpreter) -> None:
    value = group_a.evaluate_text("[a, v] + (i/(2*kappa))*v^2")
    assert isinstance(value, NCPoly)
    assert value.is_zero()


def test_antipode_matches_its_preset_image(group_a: Interpreter) -> None:
    assert group_a.evaluate_text("S(a)") == group_a.evaluate_text("-a + v*tau")
    assert group_a.evaluate_text("S(S(tau))") == group_a.evaluate_text("tau")


def test_counit_returns_a_scalar(group_a: Interpreter) -> None:
    assert group_a.evaluate_text("eps(a*v + 3)") == Scalar.constant(3)


def test_coproduct_of_a_generator(dual_a: Interpreter) -> None:
    value = dual_a.evaluate_text("Delta(H)")
    assert isinstance(value, TensorPoly)
    assert value == dual_a.evaluate_text("H (x) I + I (x) H")


def test_exponentials_invert_each_other(dual_a: Interpreter) -> None:
    value = dual_a.evaluate_text("exp((-1/kappa)*H)*exp((1/kappa)*H)")
    assert value == NCPoly.one(("H", "P", "K"))


def test_scaled_hyperbolic_series(dual_a: Interpreter) -> None:
    value = dual_a.evaluate_text("cosh_sq((1/alpha)*(1/lambda), P)")
    scale = Scalar.param("alpha") * Scalar.param("lambda")
    assert value.coefficient(()) == Scalar.one()
    assert value.coefficient(("P", "P")) == scale / 2
    assert value.coefficient(("P",)).is_zero()


@pytest.mark.parametrize(
    "text",
    [
        "kappa*a",
        "exp(v)",
        "omega",
        "a/v",
        "(a (x) v) (x) a",
    ],
)
def test_unresolvable_expressions(group_a: Interpreter, text: str) -> None:
    with pytest.raises(ResolutionError):
        group_a.evaluate_text(text)


def test_series_need_zero_constant_term(dual_a: Interpreter) -> None:
    with pytest.raises(ResolutionError):
        dual_a.evaluate_text("exp(I + H)")


def test_structure_maps_need_a_hopf_structure() -> None:
    interpreter = Interpreter(generators=("p", "q"))
    assert interpreter.evaluate_text("q*p - p*q") == interpreter.evaluate_text("[q, p]")
    with pytest.raises(ParseError):
        interpreter.evaluate_text("S(p)")
