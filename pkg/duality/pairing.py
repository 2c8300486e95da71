"""Pairing between a group Hopf algebra and its dual quantum Lie algebra.

Single dual generators pair with group monomials through a delta table
(<H, tau> = <P, a> = <K, v> = i, zero elsewhere, zero on I). Longer dual
words pair through the iterated group coproduct:
<x y ..., m> = <x (x) y ..., Delta m>.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from algebra.freealg import NCPoly, TensorPoly, Word
from algebra.normalize import pbw_monomials
from algebra.scalar import Scalar
from hopf.presets import DUAL_GRADES, GROUP_GRADES
from hopf.spec import HopfSpec

DUAL_ORDER = ("H", "P", "K")
PARTNERS = {"H": "tau", "P": "a", "K": "v"}


class ReconstructionError(RuntimeError):
    pass


def grade_of(word: Word, grades: Mapping[str, int]) -> int:
    return sum(grades[letter] for letter in word)


@dataclass(frozen=True)
class PairingBase:
    """Values of each dual generator on normal-ordered group monomials."""

    partners: Mapping[str, str] = field(default_factory=lambda: dict(PARTNERS))

    def value(self, dual_generator: str, group_word: Word) -> Scalar:
        if tuple(group_word) == (self.partners[dual_generator],):
            return Scalar.imaginary()
        return Scalar.zero()

    def table(self, group_words: Sequence[Word]) -> Dict[str, Dict[Word, Scalar]]:
        return {x: {w: self.value(x, w) for w in group_words} for x in self.partners}


@dataclass
class FunctionalVector:
    """Values of one functional on every group PBW monomial up to `degree`."""

    degree: int
    values: Dict[Word, Scalar]

    def value(self, word: Word) -> Scalar:
        return self.values.get(tuple(word), Scalar.zero())

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())


@dataclass
class GramMatrix:
    degree: int
    rows: List[Word]
    columns: List[Word]
    row_grades: List[int]
    column_grades: List[int]
    entries: np.ndarray

    def entry(self, row: Word, column: Word) -> Scalar:
        return self.entries[self.rows.index(tuple(row)), self.columns.index(tuple(column))]

    def block(self, grade: int) -> Tuple[List[int], List[int]]:
        """Row and column indices of one grade."""
        rows = [k for k, g in enumerate(self.row_grades) if g == grade]
        columns = [k for k, g in enumerate(self.column_grades) if g == grade]
        return rows, columns


class Pairing:
    def __init__(
        self,
        group: HopfSpec,
        base: PairingBase | None = None,
        dual_generators: Sequence[str] = DUAL_ORDER,
        dual_grades: Mapping[str, int] = DUAL_GRADES,
        group_grades: Mapping[str, int] = GROUP_GRADES,
    ):
        if group.truncated:
            raise ValueError(f"{group.name}: the pairing needs the exact group structure")
        self.group = group
        self.base = base or PairingBase()
        self.dual_generators = tuple(dual_generators)
        self.dual_grades = dict(dual_grades)
        self.group_grades = dict(group_grades)
        self._cache: Dict[Tuple[Word, Word], Scalar] = {}
        self._gram: GramMatrix | None = None

    @property
    def presentation(self):
        return self.group.presentation

    def dual_monomials(self, degree: int) -> List[Word]:
        words = []

        def extend(word: Word, start: int, used: int) -> None:
            words.append(word)
            for index in range(start, len(self.dual_generators)):
                letter = self.dual_generators[index]
                if used + self.dual_grades[letter] <= degree:
                    extend(word + (letter,), index, used + self.dual_grades[letter])

        extend((), 0, 0)
        rank = {g: k for k, g in enumerate(self.dual_generators)}
        return sorted(words, key=lambda w: (grade_of(w, self.dual_grades), len(w), [rank[x] for x in w]))

    def group_monomials(self, degree: int) -> List[Word]:
        return pbw_monomials(self.presentation, degree, self.group_grades)

    def pair_word(self, dual_word: Word, group_word: Word) -> Scalar:
        key = (tuple(dual_word), tuple(group_word))
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if not dual_word:
            value = self.group.counit_word(group_word)
        elif len(dual_word) == 1:
            value = self.base.value(dual_word[0], group_word)
        else:
            head = (self.base.partners[dual_word[0]],)
            value = Scalar.zero()
            for (left, right), coef in self.group.coproduct_word(group_word).items():
                if left == head:
                    value = value + coef * Scalar.imaginary() * self.pair_word(dual_word[1:], right)
        self._cache[key] = value
        return value

    def pair(self, dual_word: Word, phi: NCPoly) -> Scalar:
        total = Scalar.zero()
        for word, coef in self.group.normal(phi).items():
            total = total + coef * self.pair_word(dual_word, word)
        return total

    def pair_element(self, x: NCPoly, phi: NCPoly) -> Scalar:
        total = Scalar.zero()
        for word, coef in x.items():
            total = total + coef * self.pair(word, phi)
        return total

    def pair_tensor(self, t: TensorPoly, phi: NCPoly, psi: NCPoly) -> Scalar:
        """<t, phi (x) psi> for a two-leg dual tensor."""
        total = Scalar.zero()
        for (left, right), coef in t.items():
            total = total + coef * self.pair(left, phi) * self.pair(right, psi)
        return total

    def gram(self, degree: int) -> GramMatrix:
        """Pairings of dual PBW words against group PBW monomials up to `degree`.

        Asserts that nothing pairs with a monomial of lower grade and that every
        diagonal grade block is numeric and invertible.
        """
        if self._gram is not None and self._gram.degree >= degree:
            return restrict(self._gram, degree)
        rows = self.dual_monomials(degree)
        columns = self.group_monomials(degree)
        row_grades = [grade_of(w, self.dual_grades) for w in rows]
        column_grades = [grade_of(w, self.group_grades) for w in columns]
        entries = np.empty((len(rows), len(columns)), dtype=object)
        for i, row in enumerate(rows):
            for j, column in enumerate(columns):
                value = self.pair_word(row, column)
                if row_grades[i] > column_grades[j] and not value.is_zero():
                    raise ReconstructionError(
                        f"<{row}, {column}> = {value.to_text()} pairs a dual word with a lighter monomial"
                    )
                entries[i, j] = value
        gram = GramMatrix(degree, rows, columns, row_grades, column_grades, entries)
        for grade in range(degree + 1):
            block_rows, block_columns = gram.block(grade)
            if len(block_rows) != len(block_columns):
                raise ReconstructionError(
                    f"grade {grade}: {len(block_rows)} dual words against {len(block_columns)} group monomials"
                )
            block = entries[np.ix_(block_rows, block_columns)]
            if not all(v.is_constant() for v in block.flat):
                raise ReconstructionError(f"grade {grade}: diagonal block depends on the parameters")
            if block.size and rank_of(block) < len(block_rows):
                raise ReconstructionError(f"grade {grade}: singular diagonal block")
        self._gram = gram
        return gram

    def functional(self, fn, degree: int) -> FunctionalVector:
        return FunctionalVector(degree, {w: Scalar.coerce(fn(w)) for w in self.group_monomials(degree)})


def restrict(gram: GramMatrix, degree: int) -> GramMatrix:
    rows = [k for k, g in enumerate(gram.row_grades) if g <= degree]
    columns = [k for k, g in enumerate(gram.column_grades) if g <= degree]
    return GramMatrix(
        degree,
        [gram.rows[k] for k in rows],
        [gram.columns[k] for k in columns],
        [gram.row_grades[k] for k in rows],
        [gram.column_grades[k] for k in columns],
        gram.entries[np.ix_(rows, columns)],
    )


def solve_exact(matrix: np.ndarray, rhs: Sequence[Scalar]) -> List[Scalar]:
    """Gauss-Jordan elimination for a square numeric matrix and Scalar right-hand side."""
    size = matrix.shape[0]
    rows = [[Scalar.coerce(v) for v in matrix[i]] + [Scalar.coerce(rhs[i])] for i in range(size)]
    for column in range(size):
        pivot = next((r for r in range(column, size) if not rows[r][column].is_zero()), None)
        if pivot is None:
            raise ReconstructionError(f"singular block at column {column}")
        rows[column], rows[pivot] = rows[pivot], rows[column]
        lead = rows[column][column]
        rows[column] = [v / lead for v in rows[column]]
        for r in range(size):
            if r != column and not rows[r][column].is_zero():
                factor = rows[r][column]
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[column])]
    return [row[size] for row in rows]


def rank_of(matrix: np.ndarray) -> int:
    rows = [[Scalar.coerce(v) for v in row] for row in matrix]
    rank = 0
    for column in range(matrix.shape[1]):
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][column].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][column]
        for r in range(rank + 1, len(rows)):
            if not rows[r][column].is_zero():
                factor = rows[r][column] / lead
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[rank])]
        rank += 1
    return rank
