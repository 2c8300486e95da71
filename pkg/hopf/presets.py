from __future__ import annotations

from typing import Dict, Mapping, Sequence, Tuple

from algebra.normalize import Presentation
from hopf.spec import HopfSpec
from utils.interpreter import Interpreter

DEFAULT_DEGREE = 6

GROUP_PRESETS = ("group_A", "group_B")
DUAL_PRESETS = ("dual_A", "dual_B")
PRESET_NAMES = GROUP_PRESETS + DUAL_PRESETS

# Grades used by truncation on the dual side and by the duality engine on the group side.
DUAL_GRADES = {"H": 1, "P": 2, "K": 1}
GROUP_GRADES = {"tau": 1, "a": 2, "v": 1}

# Exponential factor order of the group element f(mu, eta, lam_c) per family.
EXPONENTIAL_ORDER = {"A": ("a", "v", "tau"), "B": ("a", "tau", "v")}

PRESENTATIONS: Dict[str, dict] = {
    "group_A": {
        "generators": ("tau", "a", "v"),
        "relations": {
            ("a", "v"): "-(i/(2*kappa))*v^2",
            ("a", "tau"): "(i/kappa)*a + (i/rho)*v",
            ("v", "tau"): "(i/kappa)*v",
        },
        "weights": {"tau": 1, "a": 2, "v": 1},
    },
    "group_B": {
        "generators": ("a", "tau", "v"),
        "relations": {
            ("a", "v"): "(i/alpha)*tau - (i/sigma)*v",
            ("a", "tau"): "(i/sigma)*tau + (i/lambda)*v",
            ("v", "tau"): "0",
        },
        "weights": {"a": 1, "tau": 1, "v": 1},
    },
    "dual_A": {
        "generators": ("H", "P", "K"),
        "relations": {
            ("H", "P"): "0",
            ("K", "P"): "-(i/(2*kappa))*P^2",
            ("K", "H"): "i*P",
        },
        "weights": {"H": 1, "P": 1, "K": 2},
    },
    "dual_B": {
        "generators": ("H", "P", "K"),
        "relations": {
            ("H", "P"): "0",
            ("K", "P"): "0",
            ("K", "H"): "i*P",
        },
        "weights": None,
    },
}

GROUP_HOPF = {
    "coproducts": {
        "tau": "tau (x) I + I (x) tau",
        "a": "a (x) I + I (x) a + v (x) tau",
        "v": "v (x) I + I (x) v",
    },
    "antipodes": {"tau": "-tau", "a": "-a + v*tau", "v": "-v"},
    "counits": {"tau": "0", "a": "0", "v": "0"},
    "stars": {"tau": "tau", "a": "a", "v": "v"},
}

# ad(a) squares to B_SQUARE on span(tau, v), so its exponential is cosh_sq + sinh_sq in P.
B_SQUARE = "(1/sigma)^2 + (1/alpha)*(1/lambda)"
# Printed forms use B_SCALE = 1/(alpha*lambda) with an overall exp(-P/sigma).
B_SCALE = "(1/alpha)*(1/lambda)"

DUAL_HOPF = {
    "dual_A": {
        "coproducts": {
            "H": "H (x) I + I (x) H",
            "P": "P (x) I + exp((-1/kappa)*H) (x) P",
            "K": "K (x) I + exp((-1/kappa)*H) (x) K - (1/rho)*H*exp((-1/kappa)*H) (x) P",
        },
        "antipodes": {
            "H": "-H",
            "P": "-exp((1/kappa)*H)*P",
            "K": "-exp((1/kappa)*H)*K - (1/rho)*exp((1/kappa)*H)*H*P",
        },
    },
    "dual_B": {
        "coproducts": {
            "H": f"I (x) H + H (x) cosh_sq({B_SQUARE}, P) - (1/sigma)*H (x) sinh_sq({B_SQUARE}, P)"
            f" - (1/alpha)*K (x) sinh_sq({B_SQUARE}, P)",
            "K": f"I (x) K + K (x) cosh_sq({B_SQUARE}, P) + (1/sigma)*K (x) sinh_sq({B_SQUARE}, P)"
            f" - (1/lambda)*H (x) sinh_sq({B_SQUARE}, P)",
            "P": "I (x) P + P (x) I",
        },
        "antipodes": {
            "H": f"-H*cosh_sq({B_SQUARE}, P) - (1/sigma)*H*sinh_sq({B_SQUARE}, P) - (1/alpha)*K*sinh_sq({B_SQUARE}, P)",
            "K": f"-K*cosh_sq({B_SQUARE}, P) + (1/sigma)*K*sinh_sq({B_SQUARE}, P) - (1/lambda)*H*sinh_sq({B_SQUARE}, P)",
            "P": "-P",
        },
    },
}

# Structure maps exactly as printed alongside the quantum Lie algebras, where they
# differ from the presets above. Compared against the reconstruction in reports.
PRINTED_VARIANTS = {
    "dual_A": {
        "S(P)": "-P*exp((-1/kappa)*H)",
        "S(K)": "-K*exp((-1/kappa)*H) - (1/rho)*H*P*exp((-1/kappa)*H)",
    },
    "dual_B": {
        "[K, H]": "i*exp((-1/sigma)*P)*sinh_sq((1/sigma)^2, P)",
        "Delta(H)": f"I (x) H + H (x) exp((-1/sigma)*P)*cosh_sq({B_SCALE}, P)"
        f" - (1/lambda)*K (x) exp((-1/sigma)*P)*sinh_sq({B_SCALE}, P)",
        "Delta(K)": f"I (x) K + K (x) exp((-1/sigma)*P)*cosh_sq({B_SCALE}, P)"
        f" - (1/alpha)*H (x) exp((-1/sigma)*P)*sinh_sq({B_SCALE}, P)",
        "S(H)": f"-H*exp((1/sigma)*P)*cosh_sq({B_SCALE}, P) - (1/alpha)*K*exp((1/sigma)*P)*sinh_sq({B_SCALE}, P)",
        "S(K)": f"-K*exp((1/sigma)*P)*cosh_sq({B_SCALE}, P) - (1/lambda)*H*exp((1/sigma)*P)*sinh_sq({B_SCALE}, P)",
    },
}


def family(name: str) -> str:
    return name.rsplit("_", 1)[-1]


def dual_weights(degree: int) -> Dict[str, int]:
    """H and K outweigh every power of P that fits under the truncation degree."""
    heavy = max(degree, 1)
    return {"H": heavy, "P": 1, "K": heavy}


def relation_values(
    relations: Mapping[Tuple[str, str], str],
    generators: Sequence[str],
    degree: int | None,
    grades: Mapping[str, int] | None = None,
):
    interpreter = Interpreter(generators=generators, degree=degree, grades=grades)
    values = {}
    for pair, text in relations.items():
        values[pair] = interpreter.as_poly(interpreter.evaluate_text(text))
    return values


def presentation_from_texts(
    name: str,
    generators: Sequence[str],
    relations: Mapping[Tuple[str, str], str],
    weights: Mapping[str, int] | None = None,
    grades: Mapping[str, int] | None = None,
    degree: int | None = None,
) -> Presentation:
    values = relation_values(relations, generators, degree, grades)
    return Presentation(name, generators, values, weights, grades, degree)


def build_presentation(name: str, degree: int | None = DEFAULT_DEGREE) -> Presentation:
    if name not in PRESENTATIONS:
        raise ValueError(f"unknown preset {name!r}, expected one of {list(PRESET_NAMES)}")
    entry = PRESENTATIONS[name]
    if name in GROUP_PRESETS:
        return presentation_from_texts(name, entry["generators"], entry["relations"], entry["weights"])
    weights = entry["weights"] or dual_weights(degree)
    return presentation_from_texts(name, entry["generators"], entry["relations"], weights, DUAL_GRADES, degree)


def build_preset(name: str, degree: int | None = DEFAULT_DEGREE) -> HopfSpec:
    """Group presets are exact and ignore `degree`; dual presets are truncated at it."""
    if name in GROUP_PRESETS:
        presentation = build_presentation(name)
        return HopfSpec.from_texts(name, presentation, **GROUP_HOPF)
    if degree is None:
        raise ValueError(f"{name} is a formal series structure and needs a truncation degree")
    presentation = build_presentation(name, degree)
    data = DUAL_HOPF[name]
    generators = presentation.generators
    return HopfSpec.from_texts(
        name,
        presentation,
        data["coproducts"],
        data["antipodes"],
        counits={g: "0" for g in generators},
        stars={g: g for g in generators},
        degree=degree,
    )
