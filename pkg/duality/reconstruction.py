from __future__ import annotations

from typing import Dict, List, Sequence

import numpy as np

from algebra.freealg import NCPoly, TensorPoly, Word, apply_legwise, flip
from algebra.normalize import Presentation
from algebra.scalar import Scalar
from algebra.series import product_of_exponentials
from duality.pairing import DUAL_ORDER, FunctionalVector, Pairing, ReconstructionError, grade_of, solve_exact
from hopf.checks import CheckResult, multiply_legs
from hopf.presets import DUAL_GRADES, EXPONENTIAL_ORDER, build_preset, dual_weights
from hopf.spec import HopfSpec

# Factor order of e^{lam tau} e^{mu a} e^{eta v} used by the star check on group elements.
STAR_ELEMENT_ORDER = ("tau", "a", "v")


def in_basis(h: HopfSpec, order: Sequence[str]) -> HopfSpec:
    """The same group structure with every image re-normal-ordered in a new generator order."""
    p = h.presentation.reordered(order)
    return HopfSpec(
        h.name,
        p,
        {g: p.normal_tensor(t) for g, t in h.coproducts.items()},
        h.counits,
        {g: p.normal_order(s) for g, s in h.antipodes.items()},
        {g: p.normal_order(s) for g, s in h.stars.items()},
        h.degree,
        h.sources,
    )


def axiom_antipode(h: HopfSpec) -> Dict[str, NCPoly]:
    """Solves m(S (x) id) Delta(g) = eps(g) for S on generators by fixed-point iteration.

    Needs the coefficient of g (x) I in Delta(g) to be 1; each pass fixes at least
    one more grade, so degree + 2 passes suffice.
    """
    if h.degree is None:
        raise ValueError(f"{h.name}: the fixed-point antipode needs a truncation degree")
    one = NCPoly.one(h.generators)
    rests = {}
    for g in h.generators:
        generator = NCPoly.generator(g, h.generators)
        if h.coproducts[g].coefficient(((g,), ())) != Scalar.one():
            raise ReconstructionError(f"{h.name}: Delta({g}) has no unit {g} (x) I term")
        rests[g] = h.coproducts[g] - TensorPoly.pure(generator, one)
    current = {g: -NCPoly.generator(g, h.generators) for g in h.generators}
    for _ in range(h.degree + 2):
        trial = HopfSpec(h.name, h.presentation, h.coproducts, h.counits, current, degree=h.degree)
        updated = {}
        for g in h.generators:
            correction = multiply_legs(trial, apply_legwise(trial.antipode, rests[g], 0))
            updated[g] = h.normal(NCPoly.constant(h.counits[g], h.generators) - correction)
        if updated == current:
            return current
        current = updated
    raise ReconstructionError(f"{h.name}: antipode iteration did not settle within {h.degree + 2} passes")


class DualityEngine:
    """Reconstructs the dual quantum Lie algebra of a group Hopf algebra up to a grade."""

    def __init__(self, group: HopfSpec, degree: int, order: Sequence[str] | None = None):
        if degree < 1:
            raise ValueError("reconstruction needs degree >= 1")
        self.group = in_basis(group, order) if order else group
        self.degree = degree
        self.pairing = Pairing(self.group)
        self.universe = DUAL_ORDER

    @classmethod
    def for_family(cls, family: str, degree: int) -> "DualityEngine":
        return cls(build_preset(f"group_{family}"), degree, EXPONENTIAL_ORDER[family])

    def __repr__(self) -> str:
        return f"DualityEngine({self.group.name}, order={self.group.generators}, degree={self.degree})"

    def functional(self, fn, degree: int | None = None) -> FunctionalVector:
        return self.pairing.functional(fn, self.degree if degree is None else degree)

    def monomial(self, word: Word) -> NCPoly:
        return NCPoly.monomial(word, 1, self.group.generators)

    def reconstruct(self, fv: FunctionalVector) -> NCPoly:
        """The dual PBW combination whose pairings reproduce fv, solved grade block by grade block."""
        gram = self.pairing.gram(fv.degree)
        solution: Dict[int, Scalar] = {}
        for grade in range(fv.degree + 1):
            rows, columns = gram.block(grade)
            if not rows:
                continue
            lighter = list(solution)
            rhs = []
            for j in columns:
                value = fv.value(gram.columns[j])
                for r in lighter:
                    value = value - solution[r] * gram.entries[r, j]
                rhs.append(value)
            matrix = gram.entries[np.ix_(rows, columns)].T
            solution.update(zip(rows, solve_exact(matrix, rhs)))
        for j, column in enumerate(gram.columns):
            paired = Scalar.zero()
            for r, coef in solution.items():
                paired = paired + coef * gram.entries[r, j]
            if paired != fv.value(column):
                raise ReconstructionError(
                    f"residual at {column}: {(paired - fv.value(column)).to_text()}"
                )
        return NCPoly({gram.rows[r]: coef for r, coef in solution.items()}, self.universe)

    def dual_commutator(self, x: str, y: str) -> NCPoly:
        pair = self.pairing.pair_word
        return self.reconstruct(self.functional(lambda w: pair((x, y), w) - pair((y, x), w)))

    def _product_value(self, x: str, phi: Word, psi: Word) -> Scalar:
        return self.pairing.pair((x,), self.monomial(phi) * self.monomial(psi))

    def dual_coproduct(self, x: str) -> TensorPoly:
        """Delta(x) from <x, phi psi> = <Delta(x), phi (x) psi> on all pairs up to joint grade N."""
        n = self.degree
        grades = self.pairing.group_grades
        group_words = self.pairing.group_monomials(n)
        partial: Dict[Word, Dict[Word, Scalar]] = {}
        for psi in group_words:
            room = n - grade_of(psi, grades)
            image = self.reconstruct(self.functional(lambda phi, psi=psi: self._product_value(x, phi, psi), room))
            for word, coef in image.items():
                partial.setdefault(word, {})[psi] = coef
        terms: Dict[tuple, Scalar] = {}
        for left in self.pairing.dual_monomials(n):
            room = n - grade_of(left, DUAL_GRADES)
            row = partial.get(left, {})
            image = self.reconstruct(self.functional(lambda psi: row.get(psi, Scalar.zero()), room))
            for right, coef in image.items():
                terms[(left, right)] = coef
        delta = TensorPoly(2, terms, self.universe)
        self._check_closure(x, delta, group_words)
        return delta

    def _check_closure(self, x: str, delta: TensorPoly, group_words: List[Word]) -> None:
        """<Delta(x), phi (x) psi> = <x, phi psi> on every pair, including those the solve never used."""
        pair = self.pairing.pair_word
        grades = self.pairing.group_grades
        for phi in group_words:
            for psi in group_words:
                if grade_of(phi, grades) + grade_of(psi, grades) > self.degree:
                    continue
                lhs = Scalar.zero()
                for (left, right), coef in delta.items():
                    lhs = lhs + coef * pair(left, phi) * pair(right, psi)
                if lhs != self._product_value(x, phi, psi):
                    raise ReconstructionError(f"Delta({x}) does not reproduce <{x}, {phi}{psi}>")

    def dual_antipode(self, x: str) -> NCPoly:
        return self.reconstruct(
            self.functional(lambda w: self.pairing.pair((x,), self.group.antipode(self.monomial(w))))
        )

    def dual_star(self, x: str) -> NCPoly:
        group = self.group

        def value(w: Word) -> Scalar:
            return self.pairing.pair((x,), group.inverse_antipode(group.star(self.monomial(w)))).conj()

        return self.reconstruct(self.functional(value))

    def dual_counit(self, x: str) -> Scalar:
        return self.pairing.pair_word((x,), ())

    def presentation(self, name: str) -> Presentation:
        brackets = {}
        for i, earlier in enumerate(self.universe):
            for later in self.universe[i + 1:]:
                brackets[(later, earlier)] = self.dual_commutator(later, earlier)
        return Presentation(name, self.universe, brackets, dual_weights(self.degree), DUAL_GRADES, self.degree)

    def reconstruct_hopf(self, name: str | None = None) -> HopfSpec:
        """The full dual structure; the duality antipode must agree with the axiom fixed point."""
        name = name or f"{self.group.name.replace('group', 'dual')}_reconstructed"
        presentation = self.presentation(name)
        coproducts = {x: self.dual_coproduct(x) for x in self.universe}
        counits = {x: self.dual_counit(x) for x in self.universe}
        antipodes = {x: self.dual_antipode(x) for x in self.universe}
        stars = {x: self.dual_star(x) for x in self.universe}
        h = HopfSpec(name, presentation, coproducts, counits, antipodes, stars, self.degree)
        axiom = axiom_antipode(HopfSpec(name, presentation, coproducts, counits, None, degree=self.degree))
        for x in self.universe:
            if h.normal(antipodes[x]) != axiom[x]:
                raise ReconstructionError(
                    f"S({x}) by duality {antipodes[x].to_text(presentation.rank)}"
                    f" differs from the axiom route {axiom[x].to_text(presentation.rank)}"
                )
        return h


def basis_convention_record(degree: int) -> CheckResult:
    """Family A pairing in the tau < a < v basis against the exponential-coordinate basis.

    Informational: the first basis gives the opposite coproduct with kappa -> -kappa.
    """
    exponential = DualityEngine.for_family("A", degree)
    native = DualityEngine(build_preset("group_A"), degree)
    details = {"exponential_order": " < ".join(exponential.group.generators),
               "native_order": " < ".join(native.group.generators)}
    for x in DUAL_ORDER:
        reference = exponential.dual_coproduct(x)
        candidate = native.dual_coproduct(x)
        expected = flip(reference.map_coefficients(lambda c: c.reflect("inv_kappa")))
        details[f"Delta({x})"] = "opposite, kappa -> -kappa" if candidate == expected else candidate.to_text()
    return CheckResult("basis_convention_A", True, details=details)


def exponential_star_check(group: HopfSpec, degree: int) -> CheckResult:
    """S^-1(f) = [S(f*)]* on every coefficient of f = e^{lam tau} e^{mu a} e^{eta v} up to `degree`.

    The coordinates are real, so * acts on the coefficients only.
    """
    element = product_of_exponentials(group.presentation, STAR_ELEMENT_ORDER, degree)
    rank = group.presentation.rank
    checked = 0
    for mono, coef in element.items():
        lhs = group.inverse_antipode(coef)
        rhs = group.star(group.antipode(group.star(coef)))
        if lhs != rhs:
            return CheckResult("star_group_element", False, f"coefficient of {mono}: {(lhs - rhs).to_text(rank)}")
        checked += 1
    return CheckResult("star_group_element", True, details={"coefficients": str(checked)})


def native_basis_stars(degree: int) -> Dict[str, NCPoly]:
    """Dual stars of family A paired in the tau < a < v basis, where H, P and K are hermitian."""
    native = DualityEngine(build_preset("group_A"), degree)
    return {x: native.dual_star(x) for x in DUAL_ORDER}
