from fractions import Fraction

import pytest

from itersums import (
    EMPTY_WORD,
    TimeSeries,
    WordFunctional,
    convolution,
    iss,
    parse_element,
)
from helpers import W


def test_counit_is_convolution_unit():
    x = TimeSeries([[0, 1], [2, 0], [1, 1]])
    S = iss(x, (0, 2), 2)
    eps = WordFunctional.counit(2, 2)
    assert convolution(eps, S) == S
    assert convolution(S, eps) == S


def test_convolution_against_manual_splits():
    # R supported on e and [1]; T supported on e and [1][1]
    R = WordFunctional(1, 2, {EMPTY_WORD: 1, W("[1]"): Fraction(2)})
    T = WordFunctional(1, 2, {EMPTY_WORD: 1, W("[1][1]"): Fraction(5)})
    got = convolution(R, T)
    assert got.value(EMPTY_WORD) == 1
    assert got.value(W("[1]")) == 2
    assert got.value(W("[1][1]")) == 5  # e.[1][1]; the [1].[1] split is zero for both factors


def test_convolution_is_not_commutative():
    R = WordFunctional(1, 2, {EMPTY_WORD: 1, W("[1]"): 1})
    T = WordFunctional(1, 2, {EMPTY_WORD: 1, W("[1]"): 2, W("[1][1]"): 7})
    left = convolution(R, T)
    right = convolution(T, R)
    assert left.value(W("[1][1]")) != right.value(W("[1][1]")) or left == right
    # associativity
    U = WordFunctional(1, 2, {EMPTY_WORD: 1, W("[1,1]"): 3})
    assert convolution(convolution(R, T), U) == convolution(R, convolution(T, U))


def test_convolution_mismatch_errors():
    R = WordFunctional(1, 2, {EMPTY_WORD: 1})
    with pytest.raises(ValueError):
        convolution(R, WordFunctional(2, 2, {EMPTY_WORD: 1}))
    with pytest.raises(ValueError):
        convolution(R, WordFunctional(1, 3, {EMPTY_WORD: 1}))
    with pytest.raises(ValueError):
        convolution(R, WordFunctional(1, 2, {EMPTY_WORD: 1}, mode="float"))


def test_functional_validation():
    with pytest.raises(ValueError):
        WordFunctional(1, 1, {W("[1][1]"): 1})  # weight above order
    with pytest.raises(ValueError):
        WordFunctional(1, 2, {W("[1,2]", 2): 1})  # wrong alphabet


def test_pairing_beyond_truncation_raises():
    F = WordFunctional(1, 1, {EMPTY_WORD: 1, W("[1]"): 4})
    with pytest.raises(ValueError):
        F.pair(W("[1][1]"))
    assert F.pair(parse_element("3*[1] + 1*e")) == 13


def test_entries_strings_order_and_drop():
    F = WordFunctional(1, 2, {W("[1][1]"): 2, EMPTY_WORD: 1, W("[1,1]"): 3})
    assert list(F.entries_strings()) == ["e", "[1]", "[1,1]", "[1][1]"][0:1] + ["[1,1]", "[1][1]"]
    G = WordFunctional(1, 2, {EMPTY_WORD: 1.0, W("[1]"): 1e-15, W("[1,1]"): 0.25}, mode="float")
    assert G.entries_strings() == {"e": "1.0", "[1,1]": "0.25"}
    assert G.entries_strings(drop_below=None) == {"e": "1.0", "[1]": "1e-15", "[1,1]": "0.25"}
