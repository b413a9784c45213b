from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings

from itersums import (
    EMPTY_WORD,
    AlgebraElement,
    Bracket,
    TensorElement,
    Word,
    area,
    as_element,
    bracket_product,
    concat,
    concat_product,
    deconcatenate,
    dims,
    enumerate_brackets,
    enumerate_words,
    half_shuffle_bullet,
    half_shuffle_succ,
    parse_element,
    parse_word,
    project_to_brackets,
    promote,
    quasi_shuffle,
    shuffle,
)
from helpers import EL, W, words_st


# ---------------------------------------------------------------------------
# brackets


def test_bracket_product_examples():
    one = Bracket.from_letters([1], 2)
    two = Bracket.from_letters([2], 2)
    assert bracket_product(one, two) == Bracket((1, 1))
    assert bracket_product(Bracket((1,)), Bracket((1,))) == Bracket((2,))
    # oracle: componentwise exponent addition
    a, b = Bracket.from_letters([1, 2], 2), Bracket.from_letters([2], 2)
    expected = Bracket(tuple(x + y for x, y in zip(a.exponents, b.exponents)))
    assert bracket_product(a, b) == expected
    assert expected == Bracket.from_letters([1, 2, 2], 2)
    assert bracket_product(a, b).weight == a.weight + b.weight


def test_bracket_product_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        bracket_product(Bracket((1,)), Bracket((1, 0)))


def test_bracket_validation():
    with pytest.raises(ValueError):
        Bracket(())
    with pytest.raises(ValueError):
        Bracket((0, 0))
    with pytest.raises(ValueError):
        Bracket((-1, 2))
    with pytest.raises(ValueError):
        Bracket.from_letters([3], d=2)


# ---------------------------------------------------------------------------
# quasi-shuffle worked values


def test_quasi_shuffle_35():
    assert quasi_shuffle(W("[3]", 5), W("[5]", 5)) == EL("1*[3][5] + 1*[5][3] + 1*[3,5]", 5)


def test_quasi_shuffle_unit():
    w = W("[1][2,2]", 2)
    assert quasi_shuffle(EMPTY_WORD, w) == as_element(w)
    assert quasi_shuffle(w, EMPTY_WORD) == as_element(w)
    assert quasi_shuffle(EMPTY_WORD, EMPTY_WORD) == as_element(EMPTY_WORD)


def test_quasi_shuffle_11():
    assert quasi_shuffle(W("[1]"), W("[1]")) == EL("2*[1][1] + 1*[1,1]")


def test_quasi_shuffle_222():
    got = quasi_shuffle(quasi_shuffle(W("[2]"), W("[2]")), W("[2]"))
    assert got == EL("6*[2][2][2] + 3*[2,2][2] + 3*[2][2,2] + 1*[2,2,2]")


def test_quasi_shuffle_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        quasi_shuffle(W("[1]", 1), W("[1]", 2))


# ---------------------------------------------------------------------------
# half-shuffles


def test_half_shuffle_succ_examples():
    assert half_shuffle_succ(W("[1]", 2), W("[2]", 2)) == EL("1*[1][2]", 2)
    assert half_shuffle_succ(EMPTY_WORD, W("[3]")) == as_element(W("[3]"))
    # one unfolding of the recursion: [1] > [2][3] = ([1] * [2])[3]
    got = half_shuffle_succ(W("[1]", 3), W("[2][3]", 3))
    oracle = concat_product(quasi_shuffle(W("[1]", 3), W("[2]", 3)), as_element(W("[3]", 3)))
    assert got == oracle
    assert got == EL("1*[1][2][3] + 1*[2][1][3] + 1*[1,2][3]", 3)


def test_half_shuffle_succ_right_unit_is_zero():
    assert half_shuffle_succ(W("[3]"), EMPTY_WORD) == AlgebraElement.zero()


def test_half_shuffle_bullet_examples():
    assert half_shuffle_bullet(W("[3]", 5), W("[5]", 5)) == EL("1*[3,5]", 5)
    # ([1] * e)[2 . 3]
    assert half_shuffle_bullet(W("[1][2]", 3), W("[3]", 3)) == EL("1*[1][2,3]", 3)
    assert half_shuffle_bullet(EMPTY_WORD, W("[3]")) == AlgebraElement.zero()
    assert half_shuffle_bullet(W("[3]"), EMPTY_WORD) == AlgebraElement.zero()


def test_both_unit_inputs_rejected():
    with pytest.raises(ValueError):
        half_shuffle_succ(EMPTY_WORD, EMPTY_WORD)
    with pytest.raises(ValueError):
        half_shuffle_bullet(EMPTY_WORD, EMPTY_WORD)
    mixed = EL("1*e + 1*[1]")
    with pytest.raises(ValueError):
        half_shuffle_succ(mixed, mixed)
    # one-sided unit terms are fine
    assert half_shuffle_succ(mixed, W("[1]"))


def test_area_examples():
    assert area(W("[1]", 2), W("[2]", 2)) == EL("1*[1][2] + -1*[2][1]", 2)
    u = W("[1][2]", 2)
    assert area(u, u) == AlgebraElement.zero()
    assert area(W("[3]", 5), W("[5]", 5)) == EL("1*[3][5] + -1*[5][3]", 5)


# ---------------------------------------------------------------------------
# shuffle


def test_shuffle_examples():
    assert shuffle(W("[1]", 2), W("[2]", 2)) == EL("1*[1][2] + 1*[2][1]", 2)
    w = W("[1][2]", 2)
    assert shuffle(EMPTY_WORD, w) == as_element(w)
    assert shuffle(W("[1]"), W("[1]")) == EL("2*[1][1]")


def test_shuffle_never_merges_brackets():
    got = shuffle(W("[1]", 2), W("[2]", 2))
    assert all(len(word) == 2 for word in got.terms)


# ---------------------------------------------------------------------------
# deconcatenation


def test_deconcatenate_examples():
    assert deconcatenate(EMPTY_WORD) == [(EMPTY_WORD, EMPTY_WORD)]
    w = W("[1][2]", 2)
    assert deconcatenate(w) == [(EMPTY_WORD, w), (W("[1]", 2), W("[2]", 2)), (w, EMPTY_WORD)]
    fat = W("[1,2]", 2)
    assert deconcatenate(fat) == [(EMPTY_WORD, fat), (fat, EMPTY_WORD)]


def test_deconcatenate_element_is_linear():
    x = EL("2*[1][2] + 1/3*[1]", 2)
    got = deconcatenate(x)
    want = 2 * deconcatenate_tensor(W("[1][2]", 2)) + Fraction(1, 3) * deconcatenate_tensor(W("[1]", 2))
    assert got == want


def deconcatenate_tensor(w):
    out = TensorElement()
    for u, v in deconcatenate(w):
        out = out + TensorElement.from_pair(u, v)
    return out


# ---------------------------------------------------------------------------
# dimensions


def test_dims_examples():
    assert dims(2, 3) == (1, 2, 7, 24)
    assert dims(1, 3) == (1, 1, 2, 4)
    for d in (1, 2, 5):
        assert dims(d, 0) == (1,)


def _generating_function_coefficients(d, nmax):
    # expand (1-t)^d / (2(1-t)^d - 1) by exact long division
    num = [Fraction(comb(d, k) * (-1) ** k) for k in range(nmax + 1)]
    den = [2 * c for c in num]
    den[0] -= 1
    out = []
    rem = list(num)
    for k in range(nmax + 1):
        q = rem[k] / den[0]
        out.append(q)
        for j in range(k, nmax + 1):
            rem[j] -= q * den[j - k]
    return tuple(out)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dims_match_generating_function(d):
    assert tuple(map(Fraction, dims(d, 6))) == _generating_function_coefficients(d, 6)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dims_match_enumeration(d):
    table = dims(d, 5)
    words = enumerate_words(d, 5)
    for n in range(6):
        assert table[n] == sum(1 for w in words if w.weight == n)


def test_enumerate_brackets_count():
    # weight-k brackets are multisets: C(d+k-1, k)
    for d in (1, 2, 3):
        brackets = enumerate_brackets(d, 4)
        for k in range(1, 5):
            assert sum(1 for b in brackets if b.weight == k) == comb(d + k - 1, k)


# ---------------------------------------------------------------------------
# grammar and canonical order


def test_word_round_trip():
    for text in ("e", "[1]", "[1,1,2][3]", "[2][2][2]", "[1,2,2]"):
        assert repr(parse_word(text, 3)) == text


def test_word_grammar_errors():
    with pytest.raises(ValueError):
        parse_word("")
    with pytest.raises(ValueError):
        parse_word("[1)(")
    with pytest.raises(ValueError):
        parse_word("[0]")
    with pytest.raises(ValueError):
        parse_word("x[1]")


def test_element_text_canonical_order():
    # input order does not matter; output is graded by (weight, length, letters)
    x = parse_element("1*[2] + 1*[1] + 1*e + 1*[1][1] + 1*[1,1]")
    assert repr(x) == "1*e + 1*[1] + 1*[2] + 1*[1,1] + 1*[1][1]"
    assert repr(parse_element(repr(x))) == repr(x)


def test_element_text_scalars():
    x = AlgebraElement({W("[1]"): Fraction(-1, 3), EMPTY_WORD: Fraction(2)})
    assert repr(x) == "2*e + -1/3*[1]"
    assert parse_element(repr(x)) == x
    assert repr(AlgebraElement.zero()) == "0"
    assert parse_element("0") == AlgebraElement.zero()


def test_element_merges_repeated_terms():
    assert parse_element("1*[1] + 1*[1]") == EL("2*[1]")


def test_promote():
    x = EL("1*[1][2]", 2)
    y = promote(x, 4)
    assert y.dimension() == 4
    assert repr(y) == repr(x)  # text form does not carry d
    with pytest.raises(ValueError):
        promote(y, 2)


def test_project_to_brackets():
    x = EL("1*e + 2*[1] + 3*[1,2] + 4*[1][2]", 2)
    assert project_to_brackets(x) == EL("2*[1] + 3*[1,2]", 2)


def test_concat():
    assert concat(W("[1]", 2), W("[2]", 2)) == W("[1][2]", 2)
    assert concat(EMPTY_WORD, W("[1]")) == W("[1]")
    assert concat_product(EL("1*[1] + 1*[2]", 2), EL("1*[1]", 2), max_weight=2) == EL(
        "1*[1][1] + 1*[2][1]", 2
    )


# ---------------------------------------------------------------------------
# algebraic laws (property tests)


@given(u=words_st(2, 2), v=words_st(2, 2), w=words_st(2, 2))
@settings(max_examples=60, deadline=None)
def test_star_commutative_and_associative(u, v, w):
    assert quasi_shuffle(u, v) == quasi_shuffle(v, u)
    left = quasi_shuffle(quasi_shuffle(u, v), w)
    right = quasi_shuffle(u, quasi_shuffle(v, w))
    assert left == right


@given(u=words_st(2, 2, allow_empty=False), v=words_st(2, 2, allow_empty=False), w=words_st(2, 2, allow_empty=False))
@settings(max_examples=60, deadline=None)
def test_half_shuffle_axioms(u, v, w):
    assert half_shuffle_succ(u, half_shuffle_succ(v, w)) == half_shuffle_succ(quasi_shuffle(u, v), w)
    assert half_shuffle_bullet(half_shuffle_succ(u, v), w) == half_shuffle_succ(u, half_shuffle_bullet(v, w))
    assert half_shuffle_bullet(half_shuffle_bullet(u, v), w) == half_shuffle_bullet(u, half_shuffle_bullet(v, w))


@given(u=words_st(2, 3, allow_empty=False), v=words_st(2, 3, allow_empty=False))
@settings(max_examples=60, deadline=None)
def test_splitting_identity(u, v):
    split = half_shuffle_succ(u, v) + half_shuffle_succ(v, u) + half_shuffle_bullet(u, v)
    assert split == quasi_shuffle(u, v)


@given(w=words_st(3, 4, allow_empty=False))
@settings(max_examples=60, deadline=None)
def test_word_reconstruction_from_half_shuffles(w):
    parts = [Word((b,)) for b in w.brackets]
    acc = as_element(parts[0])
    for part in parts[1:]:
        acc = half_shuffle_succ(acc, part)
    assert acc == as_element(w)


@given(u=words_st(2, 3), v=words_st(2, 3))
@settings(max_examples=60, deadline=None)
def test_products_preserve_weight(u, v):
    total = u.weight + v.weight
    for product in (quasi_shuffle, shuffle):
        for word in product(u, v).terms:
            assert word.weight == total


@given(u=words_st(2, 3, allow_empty=False), v=words_st(2, 3, allow_empty=False))
@settings(max_examples=60, deadline=None)
def test_counit_of_products_vanishes(u, v):
    assert quasi_shuffle(u, v).coefficient(EMPTY_WORD) == 0


@given(w=words_st(2, 4))
@settings(max_examples=60, deadline=None)
def test_deconcatenate_reconstructs(w):
    pairs = deconcatenate(w)
    assert len(pairs) == len(w) + 1
    for left, right in pairs:
        assert concat(left, right) == w
