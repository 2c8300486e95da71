"""Coalgebra structures built from commuting generators and commuting matrix families.

For commuting H_1..H_r and a vector X = (X_1..X_m), with matrices mu_i, nu_i that
pairwise commute,

    Delta(X) = exp(sum_i mu_i H_i) (.)(x) X + flip(exp(sum_i nu_i H_i) (.)(x) X)

where (.)(x) puts the matrix entries on the left leg and the X components on the
right. The H_i stay primitive and every counit vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Dict, List, Mapping, Sequence

import numpy as np

from algebra.freealg import NCPoly, TensorPoly, flip
from algebra.normalize import Presentation
from algebra.scalar import Scalar
from algebra.series import scalar_matrix
from hopf.checks import CheckResult, check_coassociativity
from hopf.spec import HopfSpec

LM_RANDOM_TRIALS = 20
LM_RANDOM_DEGREE = 4

# Commuting primitive generators and the vector they act on, per dual family.
LM_LAYOUT = {"A": (("H",), ("K", "P")), "B": (("P",), ("H", "K"))}


class LMPreconditionError(ValueError):
    pass


@dataclass
class LMCoproduct:
    h_list: Sequence[str]
    x_vec: Sequence[str]
    presentation: Presentation
    degree: int
    coproducts: Dict[str, TensorPoly]
    counits: Dict[str, Scalar] = field(default_factory=dict)

    def as_spec(self, name: str = "lm") -> HopfSpec:
        return HopfSpec(name, self.presentation, self.coproducts, self.counits, None, degree=self.degree)


def _commutes(left: np.ndarray, right: np.ndarray) -> bool:
    difference = np.dot(left, right) - np.dot(right, left)
    return all(Scalar.coerce(entry).is_zero() for entry in difference.flat)


def _check_preconditions(p: Presentation, h_list, mu, nu) -> None:
    for i, first in enumerate(h_list):
        for second in h_list[i + 1:]:
            if not p.bracket(first, second).is_zero():
                raise LMPreconditionError(f"[{first}, {second}] != 0 in {p.name}")
    families = [(f"mu_{k + 1}", m) for k, m in enumerate(mu)] + [(f"nu_{k + 1}", m) for k, m in enumerate(nu)]
    for i, (left_name, left) in enumerate(families):
        for right_name, right in families[i + 1:]:
            if not _commutes(left, right):
                raise LMPreconditionError(f"matrices {left_name} and {right_name} do not commute")


def matrix_exponential(
    p: Presentation, h_list: Sequence[str], matrices: Sequence[np.ndarray], degree: int
) -> np.ndarray:
    """exp(sum_i M_i H_i) with NCPoly entries, normal-ordered and truncated by grade."""
    size = matrices[0].shape[0]
    zero = NCPoly.zero(p.generators)
    generator = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            entry = zero
            for h, matrix in zip(h_list, matrices):
                entry = entry + NCPoly.generator(h, p.generators) * matrix[i, j]
            generator[i, j] = entry

    ordered = np.frompyfunc(lambda e: p.normal_order(e, degree), 1, 1)
    scale = np.frompyfunc(lambda e, c: e * c, 2, 1)
    result = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            result[i, j] = NCPoly.one(p.generators) if i == j else zero
    power = result.copy()
    for n in range(1, degree + 1):
        power = ordered(np.dot(power, generator))
        if all(entry.is_zero() for entry in power.flat):
            break
        result = result + scale(power, Scalar.one() / factorial(n))
    return result


def lm_coproduct(
    p: Presentation,
    h_list: Sequence[str],
    x_vec: Sequence[str],
    mu: Sequence[np.ndarray],
    nu: Sequence[np.ndarray],
    degree: int,
) -> LMCoproduct:
    if len(mu) != len(h_list) or len(nu) != len(h_list):
        raise LMPreconditionError("one mu and one nu matrix per commuting generator")
    _check_preconditions(p, h_list, mu, nu)
    left = matrix_exponential(p, h_list, mu, degree)
    right = matrix_exponential(p, h_list, nu, degree)
    coproducts: Dict[str, TensorPoly] = {}
    for h in h_list:
        g = NCPoly.generator(h, p.generators)
        coproducts[h] = TensorPoly.pure(g, NCPoly.one(p.generators)) + TensorPoly.pure(NCPoly.one(p.generators), g)
    for k, x in enumerate(x_vec):
        total = TensorPoly.zero(2, p.generators)
        for l, component in enumerate(x_vec):
            leg = NCPoly.generator(component, p.generators)
            total = total + TensorPoly.pure(left[k, l], leg)
            total = total + flip(TensorPoly.pure(right[k, l], leg))
        coproducts[x] = p.normal_tensor(total, degree)
    counits = {g: Scalar.zero() for g in list(h_list) + list(x_vec)}
    return LMCoproduct(tuple(h_list), tuple(x_vec), p, degree, coproducts, counits)


def derive_matrices(h: HopfSpec, h_list: Sequence[str], x_vec: Sequence[str]):
    """Reads mu_i, nu_i from the terms H_i (x) X_l and X_l (x) H_i of Delta(X_k)."""
    size = len(x_vec)
    mu = [scalar_matrix([[0] * size for _ in range(size)]) for _ in h_list]
    nu = [scalar_matrix([[0] * size for _ in range(size)]) for _ in h_list]
    for k, x in enumerate(x_vec):
        delta = h.coproducts[x]
        for i, generator in enumerate(h_list):
            for l, component in enumerate(x_vec):
                mu[i][k, l] = delta.coefficient(((generator,), (component,)))
                nu[i][k, l] = delta.coefficient(((component,), (generator,)))
    return mu, nu


def lm_cocommutator(result: LMCoproduct) -> Dict[str, TensorPoly]:
    """delta(X) = Delta_1(X) - flip(Delta_1(X)), Delta_1 being the terms with one letter on each leg."""
    cocommutators: Dict[str, TensorPoly] = {}
    for name, delta in result.coproducts.items():
        first_order = TensorPoly(
            2,
            {legs: c for legs, c in delta.items() if len(legs[0]) == 1 and len(legs[1]) == 1},
            delta.universe,
        )
        cocommutator = first_order - flip(first_order)
        if flip(cocommutator) != -cocommutator:
            raise RuntimeError(f"cocommutator of {name} is not antisymmetric")
        cocommutators[name] = cocommutator
    return cocommutators


def compare_coproducts(result: LMCoproduct, target: Mapping[str, TensorPoly]) -> CheckResult:
    rank = result.presentation.rank
    grades = result.presentation.grades
    for name in result.x_vec:
        diff = result.coproducts[name] - target[name].truncate(result.degree, grades)
        if not diff.is_zero():
            return CheckResult("lm_match", False, f"Delta({name}): {diff.to_text(rank)}")
    return CheckResult("lm_match", True)


def carrier_presentation(h_count: int = 2, x_count: int = 2) -> Presentation:
    generators = [f"H{i + 1}" for i in range(h_count)] + [f"X{i + 1}" for i in range(x_count)]
    zero = NCPoly.zero(generators)
    brackets = {(generators[j], generators[i]): zero for i in range(len(generators)) for j in range(i + 1, len(generators))}
    return Presentation("lm_carrier", generators, brackets, degree=None)


def random_commuting_family(rng: np.random.Generator, size: int, count: int) -> List[np.ndarray]:
    """Polynomials of degree one in a single random integer matrix, so all of them commute."""
    base = rng.integers(-2, 3, size=(size, size))
    identity = np.eye(size, dtype=int)
    family = []
    for _ in range(count):
        slope, shift = (int(v) for v in rng.integers(-2, 3, size=2))
        family.append(scalar_matrix((slope * base + shift * identity).tolist()))
    return family


def random_trials(
    trials: int = LM_RANDOM_TRIALS, degree: int = LM_RANDOM_DEGREE, seed: int = 0
) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    carrier = carrier_presentation()
    h_list, x_vec = ("H1", "H2"), ("X1", "X2")
    results = []
    for trial in range(trials):
        family = random_commuting_family(rng, len(x_vec), 2 * len(h_list))
        mu, nu = family[: len(h_list)], family[len(h_list):]
        result = lm_coproduct(carrier, h_list, x_vec, mu, nu, degree)
        check = check_coassociativity(result.as_spec(f"lm_trial_{trial}"))
        check.name = f"lm_random_{trial:02d}"
        results.append(check)
    return results
