"""Shared builders for the test suite: parsers, random generators, strategies."""

from fractions import Fraction
import random

from hypothesis import strategies as st

from itersums import (
    EMPTY_WORD,
    Bracket,
    PolyMap,
    PowerSeries1,
    TimeSeries,
    Word,
    parse_element,
    parse_word,
)


def W(text, d=None):
    return parse_word(text, d)


def EL(text, d=None):
    return parse_element(text, d)


# ---------------------------------------------------------------------------
# seeded-random builders (for the series-based suites)


def random_word(rng: random.Random, d: int, max_weight: int, allow_empty=False) -> Word:
    weight = rng.randint(0 if allow_empty else 1, max_weight)
    if weight == 0:
        return EMPTY_WORD
    brackets = []
    remaining = weight
    while remaining > 0:
        size = rng.randint(1, remaining)
        remaining -= size
        letters = [rng.randint(1, d) for _ in range(size)]
        brackets.append(Bracket.from_letters(letters, d))
    return Word(brackets)


def random_series(rng: random.Random, d: int, n_points: int, low=-3, high=3) -> TimeSeries:
    rows = [[Fraction(rng.randint(low, high)) for _ in range(d)] for _ in range(n_points)]
    return TimeSeries(rows)


def random_invertible_series(rng: random.Random, order: int) -> PowerSeries1:
    c1 = Fraction(rng.choice([1, -1, 2, 3]), rng.choice([1, 2]))
    rest = [Fraction(rng.randint(-2, 2), rng.choice([1, 2, 3])) for _ in range(order - 1)]
    return PowerSeries1([c1, *rest])


def random_polymap(rng: random.Random, d: int, e: int, max_degree: int, terms=2) -> PolyMap:
    components = []
    for _ in range(e):
        comp = {}
        for _ in range(rng.randint(1, terms)):
            degree = rng.randint(1, max_degree)
            nu = [0] * d
            for _ in range(degree):
                nu[rng.randrange(d)] += 1
            comp[tuple(nu)] = comp.get(tuple(nu), 0) + Fraction(rng.choice([-2, -1, 1, 2, 3]))
        components.append({k: v for k, v in comp.items() if v})
    return PolyMap(d, e, components)


def insert_duplicate(x: TimeSeries, position: int) -> TimeSeries:
    """Repeat the sample at the given index, producing one zero increment."""
    rows = [x.row(k) for k in range(x.N)]
    rows.insert(position, rows[position])
    return TimeSeries(rows, x.mode)


def functional_close(got, want, rel=1e-9) -> bool:
    keys = set(got.values) | set(want.values)
    return all(
        abs(got.value(w) - want.value(w)) <= rel * max(1.0, abs(got.value(w)), abs(want.value(w)))
        for w in keys
    )


# ---------------------------------------------------------------------------
# hypothesis strategies


@st.composite
def words_st(draw, d=2, max_weight=3, allow_empty=True):
    weight = draw(st.integers(0 if allow_empty else 1, max_weight))
    if weight == 0:
        return EMPTY_WORD
    brackets = []
    remaining = weight
    while remaining > 0:
        size = draw(st.integers(1, remaining))
        remaining -= size
        letters = draw(st.lists(st.integers(1, d), min_size=size, max_size=size))
        brackets.append(Bracket.from_letters(letters, d))
    return Word(brackets)
