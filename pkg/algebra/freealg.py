from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from algebra.scalar import Scalar

Word = Tuple[str, ...]
Grades = Mapping[str, int] | None

MAX_ARITY = 3


class UniverseMismatchError(ValueError):
    pass


class ArityError(ValueError):
    pass


def word_grade(word: Word, grades: Grades = None) -> int:
    if grades is None:
        return len(word)
    return sum(grades.get(letter, 1) for letter in word)


def word_text(word: Word) -> str:
    if not word:
        return "I"
    parts: List[str] = []
    index = 0
    while index < len(word):
        letter = word[index]
        run = 1
        while index + run < len(word) and word[index + run] == letter:
            run += 1
        parts.append(letter if run == 1 else f"{letter}^{run}")
        index += run
    return "*".join(parts)


def _merge_universe(left, right):
    if left is None:
        return right
    if right is None:
        return left
    if frozenset(left) != frozenset(right):
        raise UniverseMismatchError(f"generator universes differ: {sorted(left)} vs {sorted(right)}")
    return left


def _term_text(coef: Scalar, body: str, first: bool) -> str:
    negative, factors = coef.factors()
    if body != "I":
        factors = factors + [body]
    text = "*".join(factors) or "1"
    if first:
        return f"-{text}" if negative else text
    return f" - {text}" if negative else f" + {text}"


def _sort_key(word: Word, rank: Mapping[str, int] | None):
    if rank is None:
        return (len(word), word)
    return (len(word), tuple(rank.get(letter, len(rank)) for letter in word), word)


class NCPoly:
    """Finitely supported Scalar-weighted combination of words in the free algebra."""

    __slots__ = ("_terms", "universe")

    def __init__(self, terms: Mapping[Word, Scalar] | None = None, universe: Sequence[str] | None = None):
        self._terms: Dict[Word, Scalar] = {word: coef for word, coef in (terms or {}).items() if coef}
        self.universe = tuple(universe) if universe is not None else None

    @classmethod
    def zero(cls, universe: Sequence[str] | None = None) -> "NCPoly":
        return cls({}, universe)

    @classmethod
    def one(cls, universe: Sequence[str] | None = None) -> "NCPoly":
        return cls({(): Scalar.one()}, universe)

    @classmethod
    def constant(cls, value, universe: Sequence[str] | None = None) -> "NCPoly":
        return cls({(): Scalar.coerce(value)}, universe)

    @classmethod
    def generator(cls, name: str, universe: Sequence[str] | None = None) -> "NCPoly":
        if universe is not None and name not in universe:
            raise UniverseMismatchError(f"generator {name} not in {list(universe)}")
        return cls({(name,): Scalar.one()}, universe)

    @classmethod
    def monomial(cls, word: Word, coef=1, universe: Sequence[str] | None = None) -> "NCPoly":
        return cls({tuple(word): Scalar.coerce(coef)}, universe)

    def items(self) -> Iterable[Tuple[Word, Scalar]]:
        return self._terms.items()

    def words(self) -> List[Word]:
        return list(self._terms)

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(tuple(word), Scalar.zero())

    def constant_term(self) -> Scalar:
        return self.coefficient(())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self, grades: Grades = None) -> int:
        return max((word_grade(word, grades) for word in self._terms), default=0)

    def min_degree(self, grades: Grades = None) -> int:
        return min((word_grade(word, grades) for word in self._terms), default=0)

    def with_universe(self, universe: Sequence[str] | None) -> "NCPoly":
        return NCPoly(self._terms, universe)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "NCPoly":
        return NCPoly({word: fn(coef) for word, coef in self._terms.items()}, self.universe)

    def truncate(self, n: int, grades: Grades = None) -> "NCPoly":
        if n < 0:
            raise ValueError("truncation degree must be non-negative")
        return NCPoly({w: c for w, c in self._terms.items() if word_grade(w, grades) <= n}, self.universe)

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return other
        return NCPoly.constant(Scalar.coerce(other), self.universe)

    def __add__(self, other) -> "NCPoly":
        if isinstance(other, TensorPoly):
            return NotImplemented
        other = self._coerce(other)
        universe = _merge_universe(self.universe, other.universe)
        terms = dict(self._terms)
        for word, coef in other._terms.items():
            terms[word] = terms[word] + coef if word in terms else coef
        return NCPoly(terms, universe)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly({word: -coef for word, coef in self._terms.items()}, self.universe)

    def __sub__(self, other) -> "NCPoly":
        if isinstance(other, TensorPoly):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NCPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, TensorPoly):
            return NotImplemented
        if not isinstance(other, NCPoly):
            scale = Scalar.coerce(other)
            return NCPoly({word: coef * scale for word, coef in self._terms.items()}, self.universe)
        return nc_mul(self, other)

    def __rmul__(self, other) -> "NCPoly":
        scale = Scalar.coerce(other)
        return NCPoly({word: scale * coef for word, coef in self._terms.items()}, self.universe)

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if isinstance(other, (Scalar, int)):
            return self._terms == NCPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"NCPoly({self.to_text()})"

    def to_text(self, rank: Mapping[str, int] | None = None) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda item: _sort_key(item[0], rank))
        return "".join(
            _term_text(coef, word_text(word), index == 0) for index, (word, coef) in enumerate(ordered)
        )


def nc_mul(x: NCPoly, y: NCPoly) -> NCPoly:
    universe = _merge_universe(x.universe, y.universe)
    terms: Dict[Word, Scalar] = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            word = w1 + w2
            coef = c1 * c2
            terms[word] = terms[word] + coef if word in terms else coef
    return NCPoly(terms, universe)


class TensorPoly:
    """Scalar-weighted combination of word tuples with a fixed number of legs."""

    __slots__ = ("_terms", "arity", "universe")

    def __init__(self, arity: int, terms: Mapping[Tuple[Word, ...], Scalar] | None = None,
                 universe: Sequence[str] | None = None):
        if not 1 <= arity <= MAX_ARITY:
            raise ArityError(f"tensor arity {arity} outside 1..{MAX_ARITY}")
        self.arity = arity
        self._terms: Dict[Tuple[Word, ...], Scalar] = {}
        for legs, coef in (terms or {}).items():
            if len(legs) != arity:
                raise ArityError(f"term {legs} does not have {arity} legs")
            if coef:
                self._terms[tuple(legs)] = coef
        self.universe = tuple(universe) if universe is not None else None

    @classmethod
    def zero(cls, arity: int, universe: Sequence[str] | None = None) -> "TensorPoly":
        return cls(arity, {}, universe)

    @classmethod
    def identity(cls, arity: int, universe: Sequence[str] | None = None) -> "TensorPoly":
        return cls(arity, {((),) * arity: Scalar.one()}, universe)

    @classmethod
    def pure(cls, *legs: NCPoly) -> "TensorPoly":
        universe = None
        for leg in legs:
            universe = _merge_universe(universe, leg.universe)
        terms: Dict[Tuple[Word, ...], Scalar] = {(): Scalar.one()}
        for leg in legs:
            expanded: Dict[Tuple[Word, ...], Scalar] = {}
            for key, coef in terms.items():
                for word, leg_coef in leg.items():
                    expanded[key + (word,)] = coef * leg_coef
            terms = expanded
        return cls(len(legs), terms, universe)

    def items(self) -> Iterable[Tuple[Tuple[Word, ...], Scalar]]:
        return self._terms.items()

    def coefficient(self, legs: Sequence[Word]) -> Scalar:
        return self._terms.get(tuple(tuple(leg) for leg in legs), Scalar.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self, grades: Grades = None) -> int:
        return max((sum(word_grade(leg, grades) for leg in legs) for legs in self._terms), default=0)

    def truncate(self, n: int, grades: Grades = None) -> "TensorPoly":
        if n < 0:
            raise ValueError("truncation degree must be non-negative")
        return TensorPoly(
            self.arity,
            {legs: c for legs, c in self._terms.items() if sum(word_grade(leg, grades) for leg in legs) <= n},
            self.universe,
        )

    def _check(self, other: "TensorPoly") -> None:
        if other.arity != self.arity:
            raise ArityError(f"tensor arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other) -> "TensorPoly":
        if not isinstance(other, TensorPoly):
            zero = other.is_zero() if isinstance(other, (NCPoly, Scalar)) else Scalar.coerce(other).is_zero()
            if zero:
                return self
            raise ArityError("cannot add a tensor and a non-tensor")
        self._check(other)
        universe = _merge_universe(self.universe, other.universe)
        terms = dict(self._terms)
        for legs, coef in other._terms.items():
            terms[legs] = terms[legs] + coef if legs in terms else coef
        return TensorPoly(self.arity, terms, universe)

    __radd__ = __add__

    def __neg__(self) -> "TensorPoly":
        return TensorPoly(self.arity, {legs: -coef for legs, coef in self._terms.items()}, self.universe)

    def __sub__(self, other) -> "TensorPoly":
        return self + (-other)

    def __rsub__(self, other) -> "TensorPoly":
        return (-self) + other

    def __mul__(self, other) -> "TensorPoly":
        if isinstance(other, TensorPoly):
            return tensor_mul(self, other)
        if isinstance(other, NCPoly):
            raise ArityError("cannot multiply a tensor by a single-leg element")
        scale = Scalar.coerce(other)
        return TensorPoly(self.arity, {legs: c * scale for legs, c in self._terms.items()}, self.universe)

    def __rmul__(self, other) -> "TensorPoly":
        if isinstance(other, NCPoly):
            raise ArityError("cannot multiply a tensor by a single-leg element")
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"TensorPoly({self.to_text()})"

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "TensorPoly":
        return TensorPoly(self.arity, {legs: fn(c) for legs, c in self._terms.items()}, self.universe)

    def as_poly(self) -> NCPoly:
        if self.arity != 1:
            raise ArityError(f"tensor of arity {self.arity} is not a single-leg element")
        return NCPoly({legs[0]: coef for legs, coef in self._terms.items()}, self.universe)

    def to_text(self, rank: Mapping[str, int] | None = None) -> str:
        if not self._terms:
            return "0"

        def key(item):
            legs = item[0]
            return (sum(len(leg) for leg in legs),) + tuple(_sort_key(leg, rank) for leg in legs)

        parts = []
        for index, (legs, coef) in enumerate(sorted(self._terms.items(), key=key)):
            body = " (x) ".join(word_text(leg) for leg in legs)
            negative, factors = coef.factors()
            if factors:
                body = "*".join(factors) + "*" + body
            if index == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)


def tensor_mul(x: TensorPoly, y: TensorPoly) -> TensorPoly:
    x._check(y)
    universe = _merge_universe(x.universe, y.universe)
    terms: Dict[Tuple[Word, ...], Scalar] = {}
    for legs1, c1 in x.items():
        for legs2, c2 in y.items():
            legs = tuple(a + b for a, b in zip(legs1, legs2))
            coef = c1 * c2
            terms[legs] = terms[legs] + coef if legs in terms else coef
    return TensorPoly(x.arity, terms, universe)


def apply_legwise(m: Callable[[NCPoly], "NCPoly | TensorPoly | Scalar"], t: TensorPoly, leg: int) -> TensorPoly:
    """Linear extension of m on one leg. A Scalar image removes the leg, a tensor image splices its legs in."""
    if not 0 <= leg < t.arity:
        raise ArityError(f"leg {leg} out of range for arity {t.arity}")
    images: Dict[Word, object] = {}
    terms: Dict[Tuple[Word, ...], Scalar] = {}
    new_arity = None

    def add(legs, coef):
        terms[legs] = terms[legs] + coef if legs in terms else coef

    for legs, coef in t.items():
        word = legs[leg]
        if word not in images:
            images[word] = m(NCPoly.monomial(word, 1, t.universe))
        image = images[word]
        before, after = legs[:leg], legs[leg + 1:]
        if isinstance(image, TensorPoly):
            new_arity = t.arity - 1 + image.arity
            if new_arity > MAX_ARITY:
                raise ArityError(f"arity {new_arity} exceeds {MAX_ARITY}")
            for inner, c in image.items():
                add(before + inner + after, coef * c)
        elif isinstance(image, NCPoly):
            new_arity = t.arity
            for inner, c in image.items():
                add(before + (inner,) + after, coef * c)
        else:
            new_arity = t.arity - 1
            if new_arity < 1:
                raise ArityError("cannot contract the only leg of a tensor")
            add(before + after, coef * Scalar.coerce(image))
    if new_arity is None:
        probe = m(NCPoly.one(t.universe))
        new_arity = t.arity - 1 + probe.arity if isinstance(probe, TensorPoly) else (
            t.arity if isinstance(probe, NCPoly) else t.arity - 1)
        if not 1 <= new_arity <= MAX_ARITY:
            raise ArityError(f"arity {new_arity} outside 1..{MAX_ARITY}")
    return TensorPoly(new_arity, terms, t.universe)


def flip(t: TensorPoly) -> TensorPoly:
    if t.arity != 2:
        raise ArityError("flip is defined on two-leg tensors")
    return TensorPoly(2, {(b, a): c for (a, b), c in t.items()}, t.universe)


def truncate(x, n: int, grades: Grades = None):
    return x.truncate(n, grades)
