import numpy as np
import pytest

from algebra.freealg import NCPoly
from algebra.scalar import Scalar
from duality.pairing import Pairing, PairingBase, rank_of, solve_exact
from hopf.presets import build_preset

I = Scalar.imaginary()


@pytest.fixture(scope="module")
def pairing() -> Pairing:
    return Pairing(build_preset("group_A"))


def test_generators_pair_with_their_partners(pairing: Pairing) -> None:
    assert pairing.pair_word(("H",), ("tau",)) == I
    assert pairing.pair_word(("P",), ("a",)) == I
    assert pairing.pair_word(("K",), ("v",)) == I
    assert pairing.pair_word(("H",), ("v",)).is_zero()
    assert pairing.pair_word(("P",), ()).is_zero()


def test_empty_dual_word_is_the_counit(pairing: Pairing) -> None:
    assert pairing.pair_word((), ()) == Scalar.one()
    assert pairing.pair_word((), ("a",)).is_zero()


def test_longer_words_pair_through_the_coproduct(pairing: Pairing) -> None:
    # Delta(tau^2) carries 2 tau (x) tau
    assert pairing.pair_word(("H", "H"), ("tau", "tau")) == Scalar.constant(-2)


def test_pairing_is_linear_in_the_group_element(pairing: Pairing) -> None:
    p = pairing.presentation
    x = p.generator("v") * p.generator("a")
    y = p.generator("tau") * 3
    for word in (("K",), ("P",), ("H", "K")):
        assert pairing.pair(word, x + y) == pairing.pair(word, x) + pairing.pair(word, y)
    dual = NCPoly.monomial(("H",), 2) + NCPoly.monomial(("K",), I)
    assert pairing.pair_element(dual, p.generator("tau") + p.generator("v")) == 2 * I + I * I


def test_gram_is_block_triangular_with_invertible_blocks(pairing: Pairing) -> None:
    gram = pairing.gram(3)
    rows, columns = gram.block(1)
    assert [gram.rows[k] for k in rows] == [("H",), ("K",)]
    assert [gram.columns[k] for k in columns] == [("tau",), ("v",)]
    block = gram.entries[np.ix_(rows, columns)]
    assert block[0, 0] == I and block[1, 1] == I
    assert block[0, 1].is_zero() and block[1, 0].is_zero()
    for i, row_grade in enumerate(gram.row_grades):
        for j, column_grade in enumerate(gram.column_grades):
            if row_grade > column_grade:
                assert gram.entries[i, j].is_zero()


def test_smaller_gram_is_a_restriction(pairing: Pairing) -> None:
    full = pairing.gram(3)
    small = pairing.gram(2)
    assert small.degree == 2
    assert small.entry(("H", "K"), ("tau", "v")) == full.entry(("H", "K"), ("tau", "v"))


def test_truncated_structures_cannot_be_paired() -> None:
    with pytest.raises(ValueError):
        Pairing(build_preset("dual_A", 3))


def test_custom_partner_table() -> None:
    base = PairingBase({"H": "v", "P": "a", "K": "tau"})
    assert base.value("H", ("v",)) == I
    assert base.value("H", ("tau",)).is_zero()
    assert set(base.table([("v",), ("a",)])) == {"H", "P", "K"}


def test_exact_solver_and_rank() -> None:
    matrix = np.empty((2, 2), dtype=object)
    matrix[0, 0], matrix[0, 1] = Scalar.constant(2), Scalar.zero()
    matrix[1, 0], matrix[1, 1] = Scalar.zero(), I
    kappa = Scalar.param("kappa")
    assert solve_exact(matrix, [kappa * 4, Scalar.one()]) == [kappa * 2, -I]

    singular = np.empty((2, 2), dtype=object)
    singular[0, 0], singular[0, 1] = Scalar.constant(1), Scalar.constant(2)
    singular[1, 0], singular[1, 1] = Scalar.constant(2), Scalar.constant(4)
    assert rank_of(singular) == 1
    assert rank_of(matrix) == 2
