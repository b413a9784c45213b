"""Formal power series without constant term and the word deformations they induce.

A series f = c1 t + c2 t^2 + ... acts on a word of length n through the
compositions of n: each composition merges consecutive blocks of brackets
and is weighted by the product of the corresponding coefficients.  The
resulting graded map ``psi`` deforms the quasi-shuffle products by
conjugation; Hoffman's exponential (c_n = 1/n!) turns the quasi-shuffle
product into the plain shuffle product.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import factorial

from .words import (
    EMPTY_WORD,
    AlgebraElement,
    Word,
    as_element,
    bracket_product,
    concat_product,
    half_shuffle_bullet,
    half_shuffle_succ,
    quasi_shuffle,
)


class PowerSeries1:
    """f(t) = c1 t + ... + cM t^M: a truncated series with no constant term.

    ``order`` is the number of stored coefficients; nothing is assumed about
    coefficients beyond it.  Use ``padded`` when the series is in fact a
    polynomial and the higher coefficients are exactly zero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the linear coefficient")
        self.coeffs = cs

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("coefficients are indexed from 1")
        if n > len(self.coeffs):
            raise ValueError(f"coefficient c_{n} is beyond the truncation order {self.order}")
        return self.coeffs[n - 1]

    @classmethod
    def identity(cls, order: int = 1) -> "PowerSeries1":
        """The series t, truncated at the given order."""
        return cls((Fraction(1),) + (Fraction(0),) * (order - 1))

    def padded(self, order: int) -> "PowerSeries1":
        """Zero-extend to the given order (exact when the series is a polynomial)."""
        if order <= self.order:
            return self
        return PowerSeries1(self.coeffs + (Fraction(0),) * (order - self.order))

    def truncated(self, order: int) -> "PowerSeries1":
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        return PowerSeries1(self.coeffs[:order]) if order < self.order else self

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "PowerSeries1":
        return cls(Fraction(c) for c in obj["coeffs"])

    def __eq__(self, other):
        return isinstance(other, PowerSeries1) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*t^{n}" for n, c in enumerate(self.coeffs, start=1) if c]
        return " + ".join(terms) if terms else "0"


def _mul_trunc(a: list, b: list, order: int) -> list:
    # lists indexed by exponent 0..order with [0] == 0
    out = [Fraction(0)] * (order + 1)
    for i in range(1, order + 1):
        ai = a[i]
        if not ai:
            continue
        for j in range(1, order - i + 1):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def series_compose(f: PowerSeries1, g: PowerSeries1) -> PowerSeries1:
    """(f o g) truncated at the common order; both series must share it."""
    if f.order != g.order:
        raise ValueError(f"truncation orders differ: {f.order} vs {g.order}")
    M = f.order
    glist = [Fraction(0), *g.coeffs]
    out = [Fraction(0)] * (M + 1)
    power = glist
    for n in range(1, M + 1):
        if n > 1:
            power = _mul_trunc(power, glist, M)
        cn = f.coeffs[n - 1]
        if cn:
            for k in range(n, M + 1):
                out[k] += cn * power[k]
    return PowerSeries1(out[1:])


@functools.lru_cache(maxsize=None)
def series_inverse(f: PowerSeries1) -> PowerSeries1:
    """Compositional inverse g with f o g = g o f = t up to the truncation order.

    Solved coefficient by coefficient; the system is triangular because the
    t^k coefficient of f o g is c1 g_k plus terms in g_1..g_{k-1}.
    """
    if f.coeffs[0] == 0:
        raise ValueError("series with zero linear coefficient has no compositional inverse")
    M = f.order
    g = [Fraction(0)] * (M + 1)
    g[1] = Fraction(1) / f.coeffs[0]
    for k in range(2, M + 1):
        # with g_k still 0, the residual t^k coefficient of f o g must be cancelled
        residual = _compose_coefficient(f, g, k)
        g[k] = -residual / f.coeffs[0]
    return PowerSeries1(g[1:])


def _compose_coefficient(f: PowerSeries1, glist: list, k: int) -> Fraction:
    gk = glist[: k + 1]
    total = Fraction(0)
    power = gk
    for n in range(1, k + 1):
        if n > 1:
            power = _mul_trunc(power, gk, k)
        cn = f.coeffs[n - 1]
        if cn:
            total += cn * power[k]
    return total


def hoffman_coefficients(kind: str, order: int) -> PowerSeries1:
    """The exp(t)-1 series (c_n = 1/n!) or its compositional inverse log(1+t)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if kind == "exp":
        return PowerSeries1(Fraction(1, factorial(n)) for n in range(1, order + 1))
    if kind == "log":
        return PowerSeries1(Fraction((-1) ** (n - 1), n) for n in range(1, order + 1))
    raise ValueError(f"unknown kind {kind!r}; expected 'exp' or 'log'")


# ---------------------------------------------------------------------------
# compositions of an integer and block merges


@functools.lru_cache(maxsize=None)
def enumerate_compositions(n: int) -> tuple[tuple[int, ...], ...]:
    """All 2^(n-1) compositions of n, ordered lexicographically by parts.

    Split points are encoded as a bitmask; enumerating masks from all-set to
    empty with the earliest split as the most significant bit yields the
    lexicographic order.
    """
    if n < 1:
        raise ValueError("compositions are defined for n >= 1")
    out = []
    for mask in range(2 ** (n - 1) - 1, -1, -1):
        parts = []
        run = 1
        for pos in range(n - 1):
            if mask & (1 << (n - 2 - pos)):
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return tuple(out)


def apply_composition(parts, w: Word) -> Word:
    """Merge consecutive blocks of w's brackets according to the composition."""
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be >= 1: {parts}")
    if sum(parts) != len(w):
        raise ValueError(f"composition {parts} does not sum to the word length {len(w)}")
    merged = []
    pos = 0
    for size in parts:
        block = w.brackets[pos : pos + size]
        pos += size
        b = block[0]
        for extra in block[1:]:
            b = bracket_product(b, extra)
        merged.append(b)
    return Word(merged)


# ---------------------------------------------------------------------------
# the deformation psi and friends

_PSI_CACHE: dict = {}


def _psi_word(f: PowerSeries1, w: Word) -> AlgebraElement:
    if w.is_empty:
        return AlgebraElement({EMPTY_WORD: 1})
    n = len(w)
    if f.order < n:
        raise ValueError(
            f"series order {f.order} < word length {n}; pad the series if it is a polynomial"
        )
    key = (f, w)
    hit = _PSI_CACHE.get(key)
    if hit is not None:
        return hit
    acc: dict = {}
    for parts in enumerate_compositions(n):
        coef = Fraction(1)
        for p in parts:
            coef *= f.coeffs[p - 1]
            if not coef:
                break
        if not coef:
            continue
        merged = apply_composition(parts, w)
        acc[merged] = acc.get(merged, 0) + coef
    out = AlgebraElement(acc)
    _PSI_CACHE[key] = out
    return out


def psi(f: PowerSeries1, x) -> AlgebraElement:
    """Composition-sum deformation of words induced by f; graded and linear.

    The unit word is fixed: psi(f, e) = e.
    """
    x = as_element(x)
    acc: dict = {}
    for w, c in x.terms.items():
        for w2, c2 in _psi_word(f, w).terms.items():
            acc[w2] = acc.get(w2, 0) + c * c2
    return AlgebraElement(acc)


def psi_inverse(f: PowerSeries1, x) -> AlgebraElement:
    """Inverse deformation, computed as psi of the compositional inverse series."""
    if f.coeffs[0] == 0:
        raise ValueError("psi is invertible only for series with nonzero linear coefficient")
    return psi(series_inverse(f), x)


class ZetaMap:
    """A finite table from words to the span of single brackets.

    Such a table induces a coalgebra endomorphism of the word coalgebra via
    block sums over compositions (``coalgebra_endomorphism``).  Images must be
    supported on length-one words; the zero element is allowed.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        data = {}
        for w, img in dict(entries).items():
            if not isinstance(w, Word):
                raise TypeError(f"expected Word key, got {type(w).__name__}")
            img = as_element(img) if not isinstance(img, AlgebraElement) else img
            if any(len(word) != 1 for word in img.terms):
                raise ValueError(f"image of {w!r} must be supported on length-one words")
            data[w] = img
        self.entries = data

    def image(self, w: Word) -> AlgebraElement:
        try:
            return self.entries[w]
        except KeyError:
            raise ValueError(f"zeta map is undefined on the needed subword {w!r}") from None

    def to_json(self) -> list:
        return [
            {"word": repr(w), "image": repr(img)}
            for w, img in sorted(self.entries.items(), key=lambda kv: kv[0].key())
        ]

    @classmethod
    def from_json(cls, obj, d=None) -> "ZetaMap":
        from .words import parse_element, parse_word

        raw = [(parse_word(item["word"]), item["image"]) for item in obj]
        if d is None:
            seen = [w.d for w, _ in raw if w.d is not None]
            d = max(seen) if seen else 1
        return cls({w.promoted(d): parse_element(img, d) for w, img in raw})


def coalgebra_endomorphism(zeta: ZetaMap, w: Word) -> AlgebraElement:
    """The coalgebra endomorphism induced by a zeta table, evaluated on a word.

    phi(a_1...a_n) = sum over compositions of n of the concatenation of the
    zeta images of the consecutive blocks; phi(e) = e.
    """
    if not isinstance(w, Word):
        raise TypeError(f"expected Word, got {type(w).__name__}")
    if w.is_empty:
        return AlgebraElement({EMPTY_WORD: 1})
    total = AlgebraElement()
    for parts in enumerate_compositions(len(w)):
        pos = 0
        prod = AlgebraElement({EMPTY_WORD: 1})
        for size in parts:
            block = Word(w.brackets[pos : pos + size])
            pos += size
            prod = concat_product(prod, zeta.image(block))
            if not prod:
                break
        else:
            total = total + prod
    return total


def deformed_product(f: PowerSeries1, x, y, kind: str = "star") -> AlgebraElement:
    """Conjugate a product by the deformation: psi^-1(psi(x) op psi(y)).

    ``kind`` selects the product: "star" (quasi-shuffle), "succ", "bullet" or
    "area".  The series must be invertible (c1 != 0) and long enough for the
    word lengths involved.
    """
    if kind == "area":
        return deformed_product(f, x, y, "succ") - deformed_product(f, y, x, "succ")
    ops = {"star": quasi_shuffle, "succ": half_shuffle_succ, "bullet": half_shuffle_bullet}
    if kind not in ops:
        raise ValueError(f"unknown product kind {kind!r}")
    if f.coeffs[0] == 0:
        raise ValueError("deformed products need an invertible series (c1 != 0)")
    x, y = as_element(x), as_element(y)
    needed = max(
        (len(u) + len(v) for u in x.terms for v in y.terms),
        default=0,
    )
    if f.order < needed:
        raise ValueError(
            f"series order {f.order} < maximal product length {needed}; "
            "pad the series if it is a polynomial"
        )
    return psi_inverse(f, ops[kind](psi(f, x), psi(f, y)))
