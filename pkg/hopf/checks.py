from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from algebra.freealg import NCPoly, TensorPoly, apply_legwise
from algebra.normalize import Presentation, pbw_monomials, verify_consistency
from hopf.spec import AntipodeInversionError, HopfSpec

STAR_DEGREE = 4


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ""
    details: Dict[str, str] = field(default_factory=dict)


def multiply_legs(h: HopfSpec, t: TensorPoly) -> NCPoly:
    """m: the normal-ordered product of the legs of a two-leg tensor."""
    total = NCPoly.zero(h.generators)
    for (left, right), coef in t.items():
        total = total + NCPoly.monomial(left + right, coef, h.generators)
    return h.normal(total)


def _first_failure(name: str, differences: Dict[str, object], rank) -> CheckResult:
    for label, diff in differences.items():
        if not diff.is_zero():
            return CheckResult(name, False, f"{label}: {diff.to_text(rank)}")
    return CheckResult(name, True)


def check_coassociativity(h: HopfSpec) -> CheckResult:
    differences = {}
    for g in h.generators:
        delta = h.coproducts[g]
        left = h.coproduct_tensor(delta, 0)
        right = h.coproduct_tensor(delta, 1)
        differences[f"(Delta(x)id)Delta({g}) - (id(x)Delta)Delta({g})"] = left - right
    return _first_failure("coassociativity", differences, h.presentation.rank)


def check_counit(h: HopfSpec) -> CheckResult:
    differences = {}
    for g in h.generators:
        generator = NCPoly.generator(g, h.generators)
        delta = h.coproducts[g]
        for leg, label in ((0, "(eps(x)id)"), (1, "(id(x)eps)")):
            image = apply_legwise(h.counit, delta, leg).as_poly()
            differences[f"{label}Delta({g}) - {g}"] = image - generator
    return _first_failure("counit", differences, h.presentation.rank)


def check_antipode(h: HopfSpec) -> CheckResult:
    differences = {}
    for g in h.generators:
        delta = h.coproducts[g]
        unit = NCPoly.constant(h.counits[g], h.generators)
        left = multiply_legs(h, apply_legwise(h.antipode, delta, 0))
        right = multiply_legs(h, apply_legwise(h.antipode, delta, 1))
        differences[f"m(S(x)id)Delta({g}) - eps({g})"] = left - unit
        differences[f"m(id(x)S)Delta({g}) - eps({g})"] = right - unit
    return _first_failure("antipode", differences, h.presentation.rank)


def _relators(h: HopfSpec) -> Dict[str, NCPoly]:
    relators = {}
    for x, y, value in h.presentation.relations():
        gx = NCPoly.generator(x, h.generators)
        gy = NCPoly.generator(y, h.generators)
        relators[f"[{x}, {y}]"] = gx * gy - gy * gx - value
    return relators


def check_relations_respected(h: HopfSpec) -> CheckResult:
    """Delta, eps and S applied to xy - yx - [x, y] must all vanish."""
    differences = {}
    for label, relator in _relators(h).items():
        differences[f"Delta{label}"] = h.coproduct(relator)
        differences[f"eps{label}"] = NCPoly.constant(h.counit(relator), h.generators)
        differences[f"S{label}"] = h.antipode(relator)
    return _first_failure("relations_respected", differences, h.presentation.rank)


def check_star(h: HopfSpec, degree: int = STAR_DEGREE) -> CheckResult:
    """* is an involutive antilinear anti-automorphism compatible with Delta, and
    S^-1(m) = [S(m*)]* on every PBW monomial up to `degree`."""
    rank = h.presentation.rank
    differences = {}
    for g in h.generators:
        generator = NCPoly.generator(g, h.generators)
        differences[f"star(star({g})) - {g}"] = h.star(h.star(generator)) - generator
        starred = h.stars[g]
        conj_delta = h.coproducts[g].map_coefficients(lambda c: c.conj())
        both_legs = apply_legwise(h.star, apply_legwise(h.star, conj_delta, 0), 1)
        differences[f"Delta(star({g})) - (star(x)star)Delta({g})"] = h.coproduct(starred) - h.normal_tensor(both_legs)
    for label, relator in _relators(h).items():
        differences[f"star{label}"] = h.star(relator)
    result = _first_failure("star", differences, rank)
    if not result.passed:
        return result

    monomials = pbw_monomials(h.presentation, degree if h.degree is None else min(degree, h.degree))
    try:
        for word in monomials:
            m = NCPoly.monomial(word, 1, h.generators)
            lhs = h.inverse_antipode(m)
            rhs = h.star(h.antipode(h.star(m)))
            if lhs != rhs:
                return CheckResult(
                    "star", False, f"S^-1({m.to_text(rank)}) - [S({m.to_text(rank)}*)]* = {(lhs - rhs).to_text(rank)}"
                )
    except AntipodeInversionError as exc:
        return CheckResult("star", False, str(exc))
    return CheckResult("star", True, details={"monomials": str(len(monomials))})


def antipode_square(h: HopfSpec) -> CheckResult:
    """S^2 on generators; on a commutative or cocommutative algebra it is the identity."""
    rank = h.presentation.rank
    details = {}
    for g in h.generators:
        details[f"S^2({g})"] = h.antipode_square(g).to_text(rank)
    involutive = all(h.antipode_square(g) == NCPoly.generator(g, h.generators) for g in h.generators)
    details["involutive"] = str(involutive)
    return CheckResult("antipode_square", True, details=details)


def check_presentation(p: Presentation) -> CheckResult:
    report = verify_consistency(p, p.degree)
    if report.passed:
        return CheckResult("consistency", True, details={str(t): j for t, j in report.jacobi.items()})
    return CheckResult(
        "consistency",
        False,
        f"triple {report.failing_triple}: {report.path_one} vs {report.path_two}",
    )


def check_consistency(h: HopfSpec) -> CheckResult:
    return check_presentation(h.presentation)


def run_hopf_checks(h: HopfSpec, star_degree: int = STAR_DEGREE) -> List[CheckResult]:
    return [
        check_consistency(h),
        check_coassociativity(h),
        check_counit(h),
        check_antipode(h),
        check_relations_respected(h),
        check_star(h, star_degree),
        antipode_square(h),
    ]
