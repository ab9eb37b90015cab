from fractions import Fraction
from math import factorial

import pytest

from uconf.configspace import VACUUM, BaseSpace, Configuration
from uconf.errors import ConfigMismatch, OverlappingConfigurations
from uconf.fibre_algebra import cauchy_mul, monomial, point_factor
from uconf.tensors import (
    Letter,
    Word,
    alternate,
    compare_external,
    concat,
    count_square_enumerated,
    count_words_enumerated,
    deconcat_cauchy,
    deconcat_hadamard,
    dim_T_fibre,
    dim_TboxT_fibre,
    enumerate_words,
    hadamard_factor_bijection,
    is_symmetric,
    permute_slots,
    shuffle_map,
    symmetrize,
    tensor_element,
    word,
    word_cauchy_splits,
)

BASE = BaseSpace.of([("p", 1, 1), ("q", 1, 1), ("r", 1, 1)])
MIXED = BaseSpace.of([("a", 1, 1), ("b", 2, 1), ("c", 1, 1), ("d", 2, 1)])


def one_word(w):
    return tensor_element(w.config, {w: Fraction(1)})


def test_word_distinct_points():
    w = word(("q", 0), ("p", 0))
    assert w.config == Configuration(("p", "q"))
    assert len(w) == 2
    with pytest.raises(OverlappingConfigurations):
        word(("p", 0), ("p", 0))


def test_concat_and_unit():
    a = one_word(word(("p", 0)))
    b = one_word(word(("q", 0)))
    empty = one_word(Word())
    ab = concat(a, b)
    assert ab == one_word(word(("p", 0), ("q", 0)))
    assert concat(a, empty) == a
    with pytest.raises(OverlappingConfigurations):
        concat(a, a)


def test_permute_slots():
    w = word(("p", 0), ("q", 0), ("r", 0))
    assert permute_slots(w, (2, 3, 1)) == word(("q", 0), ("r", 0), ("p", 0))
    assert permute_slots(w, (1, 2, 3)) == w


def test_is_symmetric_membership():
    ab = word(("p", 0), ("q", 0))
    ba = word(("q", 0), ("p", 0))
    sym = one_word(ab) + one_word(ba)
    assert is_symmetric(sym)
    assert not is_symmetric(one_word(ab))
    assert is_symmetric(one_word(Word()))


def test_symmetrize_is_algebra_map():
    a = one_word(word(("p", 0)))
    b = one_word(word(("q", 0)))
    assert symmetrize(concat(a, b)) == cauchy_mul(symmetrize(a), symmetrize(b))
    # word order does not matter after symmetrizing
    assert symmetrize(one_word(word(("q", 0), ("p", 0)))) == symmetrize(
        one_word(word(("p", 0), ("q", 0)))
    )


def test_alternate_signs():
    ab = one_word(word(("p", 0), ("q", 0)))
    ba = one_word(word(("q", 0), ("p", 0)))
    assert alternate(ab + ba).is_zero()
    assert alternate(ab - ba) == 2 * alternate(ab)
    assert alternate(alternate(ab)) == alternate(ab)


def test_word_cauchy_splits_frozen():
    w = word(("q", 0), ("p", 1))
    # splits follow the configuration bitmask order; letters keep w's order
    assert word_cauchy_splits(w) == [
        (Word(), w),
        (word(("p", 1)), word(("q", 0))),
        (word(("q", 0)), word(("p", 1))),
        (w, Word()),
    ]


def test_deconcat_cauchy_counts():
    w = word(("p", 0), ("q", 0), ("r", 0))
    pairs = deconcat_cauchy(one_word(w))
    assert len(pairs.terms) == 8
    assert all(w1.config.union(w2.config) == w.config for (w1, w2), _ in pairs.terms)


def test_deconcat_hadamard_cuts():
    cuts = deconcat_hadamard(("u", "v"))
    assert cuts == {
        ((), ("u", "v")): 1,
        (("u",), ("v",)): 1,
        (("u", "v"), ()): 1,
    }
    assert deconcat_hadamard(()) == {((), ()): 1}
    # repeated letters pile up multiplicity on the diagonal cut
    assert sum(deconcat_hadamard(("u", "u")).values()) == 3


def test_shuffle_map_relabels():
    a, b = word(("p", 0)), word(("p", 1))
    c, d = word(("q", 0)), word(("q", 1))
    out = shuffle_map({((a, b), (c, d)): Fraction(2)})
    assert out == {((a, c), (b, d)): Fraction(2)}
    with pytest.raises(ConfigMismatch):
        shuffle_map({((a, c), (b, d)): Fraction(1)})
    with pytest.raises(OverlappingConfigurations):
        shuffle_map({((a, b), (a, b)): Fraction(1)})


def test_dims_frozen():
    two = Configuration(("p", "q"))
    three = Configuration(("p", "q", "r"))
    assert dim_T_fibre(BASE, two) == count_words_enumerated(BASE, two) == 2
    assert dim_TboxT_fibre(BASE, two) == count_square_enumerated(BASE, two) == 6
    assert dim_T_fibre(BASE, three) == 6
    assert dim_TboxT_fibre(BASE, three) == count_square_enumerated(BASE, three) == 24
    assert dim_T_fibre(BASE, VACUUM) == dim_TboxT_fibre(BASE, VACUUM) == 1
    # mixed ranks multiply through
    ab = Configuration(("a", "b"))
    assert dim_T_fibre(MIXED, ab) == factorial(2) * 2
    assert dim_TboxT_fibre(MIXED, ab) == 3 * factorial(2) * 2
    assert count_square_enumerated(MIXED, ab) == 12


def test_enumerate_words_census():
    ab = Configuration(("a", "b"))
    words = enumerate_words(MIXED, ab)
    assert len(words) == len(set(words)) == 4
    assert all(w.config == ab for w in words)


def test_compare_external_bijection():
    table = compare_external(MIXED, ("b", "a"))
    assert len(table) == 2
    keys = [k for k, _ in table]
    assert keys == [(0, 0), (1, 0)]
    monos = {m for _, m in table}
    expected = {
        monomial([point_factor("a", {0: 1}), point_factor("b", {i: 1})])
        for i in range(2)
    }
    assert monos == expected
    assert {m for _, m in compare_external(MIXED, ("a", "b"))} == expected
    with pytest.raises(OverlappingConfigurations):
        compare_external(MIXED, ("a", "a"))


def test_hadamard_factor_bijection_dims():
    cfg = Configuration(("a", "b"))
    table = hadamard_factor_bijection({"a": 2, "b": 1}, {"a": 1, "b": 2}, cfg)
    assert len(table) == (2 * 1) * (1 * 2)
    images = [image for _, image in table]
    assert len(set(images)) == len(images)
