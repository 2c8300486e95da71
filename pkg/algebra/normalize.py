from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from algebra.freealg import NCPoly, TensorPoly, Word, word_grade
from algebra.scalar import Scalar


class PresentationError(ValueError):
    pass


class RewriteError(RuntimeError):
    pass


def _accumulate(target: Dict[Word, Scalar], source: Mapping[Word, Scalar], scale: Scalar) -> None:
    for word, coef in source.items():
        value = coef * scale
        target[word] = target[word] + value if word in target else value


class Presentation:
    """Ordered generators, a commutator table and termination weights.

    A word x_j x_i with x_j after x_i in the canonical order is rewritten to
    x_i x_j + [x_j, x_i]. When `grades` is given the rewrite system is assumed
    to be grade-non-decreasing and words above `degree` are dropped early.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        brackets: Mapping[Tuple[str, str], NCPoly],
        weights: Mapping[str, int] | None = None,
        grades: Mapping[str, int] | None = None,
        degree: int | None = None,
    ):
        self.name = name
        self.generators: Tuple[str, ...] = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"{name}: duplicate generators in {list(self.generators)}")
        self.rank: Dict[str, int] = {g: k for k, g in enumerate(self.generators)}
        self.weights: Dict[str, int] = {g: 1 for g in self.generators}
        self.weights.update(weights or {})
        if any(w <= 0 for w in self.weights.values()):
            raise PresentationError(f"{name}: termination weights must be positive")
        self.grades = dict(grades) if grades else None
        self.degree = degree

        self._brackets: Dict[Tuple[str, str], NCPoly] = {}
        for (x, y), value in brackets.items():
            if x not in self.rank or y not in self.rank:
                raise PresentationError(f"{name}: relation [{x}, {y}] uses an unknown generator")
            if x == y:
                raise PresentationError(f"{name}: relation [{x}, {x}] is trivially zero")
            value = value.with_universe(self.generators)
            if self.degree is not None:
                value = value.truncate(self.degree, self.grades)
            if (x, y) in self._brackets and self._brackets[(x, y)] != value:
                raise PresentationError(f"{name}: conflicting relations for [{x}, {y}]")
            self._brackets[(x, y)] = value
            self._brackets[(y, x)] = -value

        missing = [f"[{y}, {x}]" for x, y in combinations(self.generators, 2) if (y, x) not in self._brackets]
        if missing:
            raise PresentationError(f"{name} missing relations for pairs: {missing}")
        for x, y in combinations(self.generators, 2):
            limit = self.weights[x] + self.weights[y]
            for word, _ in self._brackets[(y, x)].items():
                if self.weight(word) >= limit:
                    raise PresentationError(
                        f"{name}: correction {word} of [{y}, {x}] is not lighter than the pair (weight {limit})"
                    )
        self._cache: Dict[Tuple[Word, int | None], Dict[Word, Scalar]] = {}

    def __repr__(self) -> str:
        return f"Presentation({self.name}, order={' < '.join(self.generators)})"

    @property
    def filtered(self) -> bool:
        return self.grades is not None

    def bracket(self, x: str, y: str) -> NCPoly:
        if x == y:
            return NCPoly.zero(self.generators)
        return self._brackets[(x, y)]

    def relations(self) -> List[Tuple[str, str, NCPoly]]:
        """(x, y, [x, y]) for every pair with x after y."""
        return [(y, x, self._brackets[(y, x)]) for x, y in combinations(self.generators, 2)]

    def is_abelian(self) -> bool:
        return all(value.is_zero() for value in self._brackets.values())

    def generator(self, name: str) -> NCPoly:
        return NCPoly.generator(name, self.generators)

    def weight(self, word: Word) -> int:
        return sum(self.weights[letter] for letter in word)

    def inversions(self, word: Word) -> int:
        ranks = [self.rank[letter] for letter in word]
        return sum(1 for i in range(len(ranks)) for j in range(i + 1, len(ranks)) if ranks[i] > ranks[j])

    def measure(self, word: Word) -> Tuple[int, int]:
        return self.weight(word), self.inversions(word)

    def is_normal(self, word: Word) -> bool:
        return all(self.rank[a] <= self.rank[b] for a, b in zip(word, word[1:]))

    def grade(self, word: Word) -> int:
        return word_grade(word, self.grades)

    def _rewrite_terms(self, word: Word) -> Dict[Word, Scalar] | None:
        for k in range(len(word) - 1):
            x, y = word[k], word[k + 1]
            if self.rank[x] > self.rank[y]:
                prefix, suffix = word[:k], word[k + 2:]
                terms: Dict[Word, Scalar] = {prefix + (y, x) + suffix: Scalar.one()}
                _accumulate(terms, {prefix + w + suffix: c for w, c in self._brackets[(x, y)].items()}, Scalar.one())
                before = self.measure(word)
                for produced in terms:
                    if self.measure(produced) >= before:
                        raise RewriteError(f"{self.name}: rewrite of {word} did not decrease the measure")
                return terms
        return None

    def rewrite_once(self, word: Word) -> NCPoly | None:
        """One rewrite at the first descent, or None when the word is already normal."""
        terms = self._rewrite_terms(word)
        return None if terms is None else NCPoly(terms, self.generators)

    def _normal_word(self, word: Word, degree: int | None) -> Dict[Word, Scalar]:
        key = (word, degree)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if degree is not None and self.filtered and self.grade(word) > degree:
            self._cache[key] = {}
            return self._cache[key]
        rewritten = self._rewrite_terms(word)
        if rewritten is None:
            result = {word: Scalar.one()}
        else:
            result = {}
            for w, c in rewritten.items():
                _accumulate(result, self._normal_word(w, degree), c)
        result = {w: c for w, c in result.items() if c and (degree is None or self.grade(w) <= degree)}
        self._cache[key] = result
        return result

    def _effective_degree(self, degree: int | None) -> int | None:
        if degree is None:
            return self.degree
        if self.degree is None:
            return degree
        return min(degree, self.degree)

    def normal_order(self, x: NCPoly, degree: int | None = None) -> NCPoly:
        degree = self._effective_degree(degree)
        terms: Dict[Word, Scalar] = {}
        for word, coef in x.items():
            _accumulate(terms, self._normal_word(word, degree), coef)
        return NCPoly(terms, self.generators)

    def normal_tensor(self, t: TensorPoly, degree: int | None = None) -> TensorPoly:
        """Normal-orders every leg; `degree` bounds the total grade across legs."""
        degree = self._effective_degree(degree)
        terms: Dict[Tuple[Word, ...], Scalar] = {}
        for legs, coef in t.items():
            partial: Dict[Tuple[Word, ...], Scalar] = {(): coef}
            for leg in legs:
                expanded: Dict[Tuple[Word, ...], Scalar] = {}
                for key, c in partial.items():
                    spent = sum(self.grade(w) for w in key)
                    for word, wc in self._normal_word(leg, degree).items():
                        if degree is not None and spent + self.grade(word) > degree and self.filtered:
                            continue
                        _accumulate(expanded, {key + (word,): wc}, c)
                partial = expanded
            _accumulate(terms, partial, Scalar.one())
        result = TensorPoly(t.arity, terms, self.generators)
        return result.truncate(degree, self.grades) if degree is not None else result

    def multiply(self, x: NCPoly, y: NCPoly, degree: int | None = None) -> NCPoly:
        return self.normal_order(x * y, degree)

    def commutator(self, x: NCPoly, y: NCPoly, degree: int | None = None) -> NCPoly:
        return self.normal_order(x * y - y * x, degree)

    def reordered(self, order: Sequence[str], name: str | None = None) -> "Presentation":
        if sorted(order) != sorted(self.generators):
            raise PresentationError(f"{self.name}: {list(order)} is not a permutation of {list(self.generators)}")
        return Presentation(
            name or self.name,
            order,
            {(x, y): self._brackets[(x, y)] for x, y, _ in self.relations()},
            self.weights,
            self.grades,
            self.degree,
        )

    def with_degree(self, degree: int | None) -> "Presentation":
        return Presentation(
            self.name,
            self.generators,
            {(x, y): value for x, y, value in self.relations()},
            self.weights,
            self.grades,
            degree,
        )

    def limit(self, symbol: str) -> "Presentation":
        return Presentation(
            self.name,
            self.generators,
            {(x, y): value.map_coefficients(lambda c: c.limit(symbol)) for x, y, value in self.relations()},
            self.weights,
            self.grades,
            self.degree,
        )

    def parameters(self) -> set:
        return {p for _, _, value in self.relations() for _, coef in value.items() for p in coef.parameters()}


def pbw_monomials(p: Presentation, degree: int, grades: Mapping[str, int] | None = None) -> List[Word]:
    """Weakly increasing words of grade at most `degree`, by grade then canonical order."""
    grades = grades if grades is not None else p.grades
    found: List[Word] = []

    def extend(word: Word, start: int, used: int) -> None:
        found.append(word)
        for index in range(start, len(p.generators)):
            letter = p.generators[index]
            step = word_grade((letter,), grades)
            if used + step <= degree:
                extend(word + (letter,), index, used + step)

    extend((), 0, 0)
    return sorted(found, key=lambda w: (word_grade(w, grades), len(w), [p.rank[x] for x in w]))


def normal_order(p: Presentation, x: NCPoly, degree: int | None = None) -> NCPoly:
    return p.normal_order(x, degree)


def commutator(p: Presentation, x: NCPoly, y: NCPoly, degree: int | None = None) -> NCPoly:
    return p.commutator(x, y, degree)


def jacobi_terms(p: Presentation, x: str, y: str, z: str, degree: int | None = None) -> Tuple[NCPoly, NCPoly, NCPoly]:
    """([x,[y,z]], [y,[z,x]], [z,[x,y]]) normal-ordered."""
    gx, gy, gz = p.generator(x), p.generator(y), p.generator(z)
    return (
        p.commutator(gx, p.commutator(gy, gz, degree), degree),
        p.commutator(gy, p.commutator(gz, gx, degree), degree),
        p.commutator(gz, p.commutator(gx, gy, degree), degree),
    )


@dataclass
class ConsistencyReport:
    presentation: str
    passed: bool
    triples: List[Tuple[str, str, str]] = field(default_factory=list)
    failing_triple: Tuple[str, str, str] | None = None
    path_one: str = ""
    path_two: str = ""
    jacobi: Dict[Tuple[str, str, str], str] = field(default_factory=dict)


def verify_consistency(p: Presentation, max_degree: int | None = None) -> ConsistencyReport:
    """Resolves every overlap x_k x_j x_i (k > j > i) along both rewrite paths."""
    report = ConsistencyReport(presentation=p.name, passed=True)
    for i, j, k in combinations(range(len(p.generators)), 3):
        low, mid, high = p.generators[i], p.generators[j], p.generators[k]
        triple = (high, mid, low)
        report.triples.append(triple)
        first = NCPoly.monomial((mid, high, low), 1, p.generators) + p.bracket(high, mid) * p.generator(low)
        second = NCPoly.monomial((high, low, mid), 1, p.generators) + p.generator(high) * p.bracket(mid, low)
        one = p.normal_order(first, max_degree)
        two = p.normal_order(second, max_degree)
        jacobi = sum(jacobi_terms(p, low, mid, high, max_degree), NCPoly.zero(p.generators))
        report.jacobi[triple] = jacobi.to_text(p.rank)
        if one != two and report.passed:
            report.passed = False
            report.failing_triple = triple
            report.path_one = one.to_text(p.rank)
            report.path_two = two.to_text(p.rank)
    return report
