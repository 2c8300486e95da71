from __future__ import annotations

from typing import Dict, Mapping

from algebra.freealg import NCPoly, TensorPoly, Word, apply_legwise
from algebra.normalize import Presentation
from algebra.scalar import Scalar
from utils.interpreter import Interpreter

MAX_INVERSION_STEPS = 64


class AntipodeInversionError(RuntimeError):
    pass


class HopfSpec:
    """Generator images of Δ, ε, S and * over one presentation.

    Δ and ε extend multiplicatively, S and * anti-multiplicatively (* is also
    antilinear). `degree` is None on the exact group side; on the dual side all
    images and products are truncated by grade.
    """

    def __init__(
        self,
        name: str,
        presentation: Presentation,
        coproducts: Mapping[str, TensorPoly],
        counits: Mapping[str, Scalar],
        antipodes: Mapping[str, NCPoly] | None,
        stars: Mapping[str, NCPoly] | None = None,
        degree: int | None = None,
        sources: Mapping[str, str] | None = None,
    ):
        self.name = name
        self.presentation = presentation
        self.degree = degree
        self.generators = presentation.generators
        missing = [g for g in self.generators if g not in coproducts or (antipodes is not None and g not in antipodes)]
        if missing:
            raise ValueError(f"{name}: no coproduct or antipode image for {missing}")
        self.coproducts = {g: coproducts[g] for g in self.generators}
        self.counits = {g: Scalar.coerce(counits.get(g, Scalar.zero())) for g in self.generators}
        self.antipodes = {g: antipodes[g] for g in self.generators} if antipodes is not None else {}
        self.stars = {g: (stars or {}).get(g, NCPoly.generator(g, self.generators)) for g in self.generators}
        # Human-readable source text of every image, keyed like "Delta(a)".
        self.sources: Dict[str, str] = dict(sources or {})
        self._coproduct_cache: Dict[Word, TensorPoly] = {}
        self._antipode_cache: Dict[Word, NCPoly] = {}
        self._star_cache: Dict[Word, NCPoly] = {}
        self._inverse_cache: Dict[str, NCPoly] = {}

    def __repr__(self) -> str:
        return f"HopfSpec({self.name}, degree={self.degree})"

    @classmethod
    def from_texts(
        cls,
        name: str,
        presentation: Presentation,
        coproducts: Mapping[str, str],
        antipodes: Mapping[str, str],
        counits: Mapping[str, str] | None = None,
        stars: Mapping[str, str] | None = None,
        degree: int | None = None,
    ) -> "HopfSpec":
        interpreter = Interpreter(presentation, degree)
        sources: Dict[str, str] = {}

        def load(kind: str, table: Mapping[str, str]):
            images = {}
            for generator, text in table.items():
                sources[f"{kind}({generator})"] = text
                images[generator] = interpreter.evaluate_text(text)
            return images

        coproduct_images = load("Delta", coproducts)
        for generator, image in coproduct_images.items():
            if not isinstance(image, TensorPoly) or image.arity != 2:
                raise ValueError(f"{name}: Delta({generator}) must be a two-leg tensor")
        antipode_images = {g: interpreter.as_poly(v) for g, v in load("S", antipodes).items()}
        counit_images = {}
        for generator, value in load("eps", counits or {}).items():
            if not isinstance(value, Scalar):
                value = interpreter.as_poly(value)
                if any(word for word in value.words()):
                    raise ValueError(f"{name}: eps({generator}) must be a scalar")
                value = value.constant_term()
            counit_images[generator] = value
        star_images = {g: interpreter.as_poly(v) for g, v in load("star", stars or {}).items()}
        return cls(name, presentation, coproduct_images, counit_images, antipode_images, star_images, degree, sources)

    @property
    def truncated(self) -> bool:
        return self.degree is not None

    def interpreter(self) -> Interpreter:
        return Interpreter(self.presentation, self.degree, hopf=self)

    def _degree(self, degree: int | None) -> int | None:
        if degree is None:
            return self.degree
        return degree if self.degree is None else min(degree, self.degree)

    def normal(self, x: NCPoly) -> NCPoly:
        return self.presentation.normal_order(x, self.degree)

    def normal_tensor(self, t: TensorPoly) -> TensorPoly:
        return self.presentation.normal_tensor(t, self.degree)

    # Coproduct

    def coproduct_word(self, word: Word) -> TensorPoly:
        word = tuple(word)
        cached = self._coproduct_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = TensorPoly.identity(2, self.generators)
        else:
            head = self.coproduct_word(word[:-1])
            result = self.normal_tensor(head * self.coproducts[word[-1]])
        self._coproduct_cache[word] = result
        return result

    def coproduct(self, x: NCPoly, degree: int | None = None) -> TensorPoly:
        total = TensorPoly.zero(2, self.generators)
        for word, coef in x.items():
            total = total + self.coproduct_word(word) * coef
        degree = self._degree(degree)
        return total.truncate(degree, self.presentation.grades) if degree is not None else total

    def coproduct_tensor(self, t: TensorPoly, leg: int) -> TensorPoly:
        """Δ applied on one leg of a tensor, with the result normal-ordered."""
        return self.normal_tensor(apply_legwise(self.coproduct, t, leg))

    # Counit

    def counit_word(self, word: Word) -> Scalar:
        value = Scalar.one()
        for letter in word:
            value = value * self.counits[letter]
        return value

    def counit(self, x: NCPoly) -> Scalar:
        total = Scalar.zero()
        for word, coef in x.items():
            total = total + coef * self.counit_word(word)
        return total

    # Antipode

    def antipode_word(self, word: Word) -> NCPoly:
        word = tuple(word)
        cached = self._antipode_cache.get(word)
        if cached is not None:
            return cached
        if not self.antipodes:
            raise RuntimeError(f"{self.name} carries no antipode")
        if not word:
            result = NCPoly.one(self.generators)
        else:
            result = self.normal(self.antipodes[word[-1]] * self.antipode_word(word[:-1]))
        self._antipode_cache[word] = result
        return result

    def antipode(self, x: NCPoly, degree: int | None = None) -> NCPoly:
        total = NCPoly.zero(self.generators)
        for word, coef in x.items():
            total = total + self.antipode_word(word) * coef
        degree = self._degree(degree)
        return total.truncate(degree, self.presentation.grades) if degree is not None else total

    def antipode_square(self, generator: str) -> NCPoly:
        return self.antipode(self.antipodes[generator])

    def _classical_inverse(self, x: NCPoly) -> NCPoly:
        # The undeformed antipode: reverse every word and flip the sign of odd lengths.
        terms = NCPoly({tuple(reversed(word)): coef * (-1) ** len(word) for word, coef in x.items()}, self.generators)
        return self.normal(terms)

    def inverse_antipode_generator(self, generator: str) -> NCPoly:
        """Solves S(y) = generator by correcting the classical inverse until the defect vanishes."""
        cached = self._inverse_cache.get(generator)
        if cached is not None:
            return cached
        target = NCPoly.generator(generator, self.generators)
        guess = self._classical_inverse(target)
        for _ in range(MAX_INVERSION_STEPS):
            defect = self.antipode(guess) - target
            if defect.is_zero():
                self._inverse_cache[generator] = guess
                return guess
            guess = guess - self._classical_inverse(defect)
        raise AntipodeInversionError(
            f"{self.name}: S is not invertible on {generator} within {MAX_INVERSION_STEPS} corrections"
        )

    def inverse_antipode(self, x: NCPoly, degree: int | None = None) -> NCPoly:
        total = NCPoly.zero(self.generators)
        for word, coef in x.items():
            image = NCPoly.one(self.generators)
            for letter in word:
                image = self.normal(self.inverse_antipode_generator(letter) * image)
            total = total + image * coef
        degree = self._degree(degree)
        return total.truncate(degree, self.presentation.grades) if degree is not None else total

    # Star

    def star_word(self, word: Word) -> NCPoly:
        word = tuple(word)
        cached = self._star_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = NCPoly.one(self.generators)
        else:
            result = self.normal(self.stars[word[-1]] * self.star_word(word[:-1]))
        self._star_cache[word] = result
        return result

    def star(self, x: NCPoly, degree: int | None = None) -> NCPoly:
        total = NCPoly.zero(self.generators)
        for word, coef in x.items():
            total = total + self.star_word(word) * coef.conj()
        degree = self._degree(degree)
        return total.truncate(degree, self.presentation.grades) if degree is not None else total

    # Derived specs

    def map_scalars(self, fn, name: str | None = None, presentation: Presentation | None = None) -> "HopfSpec":
        return HopfSpec(
            name or self.name,
            presentation or self.presentation,
            {g: t.map_coefficients(fn) for g, t in self.coproducts.items()},
            {g: fn(c) for g, c in self.counits.items()},
            {g: p.map_coefficients(fn) for g, p in self.antipodes.items()} if self.antipodes else None,
            {g: p.map_coefficients(fn) for g, p in self.stars.items()},
            self.degree,
            self.sources,
        )

    def describe(self) -> Dict[str, str]:
        rank = self.presentation.rank
        summary: Dict[str, str] = {}
        for x, y, value in self.presentation.relations():
            summary[f"[{x}, {y}]"] = value.to_text(rank)
        for g in self.generators:
            summary[f"Delta({g})"] = self.coproducts[g].to_text(rank)
            if self.antipodes:
                summary[f"S({g})"] = self.antipodes[g].to_text(rank)
            summary[f"eps({g})"] = self.counits[g].to_text()
            summary[f"star({g})"] = self.stars[g].to_text(rank)
        return summary
