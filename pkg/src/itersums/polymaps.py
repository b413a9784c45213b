"""Polynomial maps between sample spaces and their induced word transformations.

A polynomial map P without constant term acts on signatures in two ways:
transforming the increments (realized on words by the concatenation morphism
``phi_P``) and transforming the series itself (realized by the quasi-shuffle
morphism ``lambda_P`` built from the letter embedding ``iota``).
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import comb

from .functionals import WordFunctional
from .signatures import TimeSeries, check_window, iss_increments
from .words import (
    EMPTY_WORD,
    AlgebraElement,
    Bracket,
    Word,
    as_element,
    bracket_product,
    concat_product,
    half_shuffle_bullet,
    half_shuffle_succ,
    quasi_shuffle,
)


class PolyMap:
    """P: R^d -> R^e with exact rational coefficients, stored sparsely per component.

    Each component maps multi-indices (exponent vectors of length d) to
    coefficients.  Constant terms are representable -- ``poly_shift`` both
    produces and consumes them -- but the word-level morphisms require
    P(0) = 0 and reject them.
    """

    __slots__ = ("d", "e", "components")

    def __init__(self, d: int, e: int, components):
        d, e = int(d), int(e)
        if d < 1 or e < 1:
            raise ValueError("polynomial maps need positive input and output dimensions")
        comps = tuple(components)
        if len(comps) != e:
            raise ValueError(f"expected {e} components, got {len(comps)}")
        normalized = []
        for comp in comps:
            data = {}
            for nu, c in dict(comp).items():
                nu = tuple(int(v) for v in nu)
                if len(nu) != d or any(v < 0 for v in nu):
                    raise ValueError(f"bad multi-index {nu} for input dimension {d}")
                c = Fraction(c)
                if c:
                    data[nu] = c
            normalized.append(data)
        self.d = d
        self.e = e
        self.components = tuple(normalized)

    @property
    def max_degree(self) -> int:
        """Largest total degree across components; the weight inflation factor of phi_P/lambda_P."""
        degrees = [sum(nu) for comp in self.components for nu in comp]
        return max(degrees, default=0)

    @property
    def has_constant_term(self) -> bool:
        zero = (0,) * self.d
        return any(zero in comp for comp in self.components)

    @classmethod
    def identity(cls, d: int) -> "PolyMap":
        unit = [{tuple(1 if j == i else 0 for j in range(d)): 1} for i in range(d)]
        return cls(d, d, unit)

    def to_json(self) -> dict:
        comps = []
        for comp in self.components:
            comps.append(
                [{"nu": list(nu), "c": str(comp[nu])} for nu in sorted(comp)]
            )
        return {"d": self.d, "e": self.e, "components": comps}

    @classmethod
    def from_json(cls, obj) -> "PolyMap":
        comps = []
        for comp in obj["components"]:
            comps.append({tuple(item["nu"]): Fraction(item["c"]) for item in comp})
        return cls(obj["d"], obj["e"], comps)

    @classmethod
    def from_json_file(cls, path) -> "PolyMap":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_json(json.load(handle))

    def __eq__(self, other):
        return (
            isinstance(other, PolyMap)
            and (self.d, self.e, self.components) == (other.d, other.e, other.components)
        )

    __hash__ = None

    def __repr__(self):
        return f"PolyMap(d={self.d}, e={self.e}, components={self.components!r})"


def _require_no_constant(P: PolyMap):
    if P.has_constant_term:
        raise ValueError("polynomial map has a constant term; apply poly_shift first")


def poly_eval(P: PolyMap, point) -> tuple:
    """Evaluate componentwise at a point of the input space."""
    pt = tuple(point)
    if len(pt) != P.d:
        raise ValueError(f"point dimension {len(pt)} does not match the map's input {P.d}")
    out = []
    for comp in P.components:
        total = 0
        for nu, c in comp.items():
            term = c
            for x, e in zip(pt, nu):
                if e == 1:
                    term = term * x
                elif e > 1:
                    term = term * x**e
            total = total + term
        out.append(total)
    return tuple(out)


def poly_shift(P: PolyMap, x0) -> PolyMap:
    """The recentered map P(. + x0) - P(x0); it vanishes at zero by construction."""
    base = tuple(Fraction(v) for v in x0)
    if len(base) != P.d:
        raise ValueError(f"shift dimension {len(base)} does not match the map's input {P.d}")
    comps = []
    for comp in P.components:
        acc: dict = {}
        for nu, c in comp.items():
            for mu in itertools.product(*(range(v + 1) for v in nu)):
                coefficient = c
                for i in range(P.d):
                    drop = nu[i] - mu[i]
                    if drop:
                        coefficient *= comb(nu[i], mu[i]) * base[i] ** drop
                if coefficient:
                    acc[mu] = acc.get(mu, 0) + coefficient
        acc.pop((0,) * P.d, None)  # subtracting P(x0) removes exactly the constant
        comps.append({k: v for k, v in acc.items() if v})
    return PolyMap(P.d, P.e, comps)


def apply_polymap(P: PolyMap, x: TimeSeries) -> TimeSeries:
    """Transform a time series pointwise."""
    if P.d != x.d:
        raise ValueError(f"map input dimension {P.d} does not match the series dimension {x.d}")
    return TimeSeries([poly_eval(P, x.row(k)) for k in range(x.N)], x.mode)


# ---------------------------------------------------------------------------
# word-level morphisms


def p_diamond(P: PolyMap, j: int) -> AlgebraElement:
    """Bracket image of an output letter: each monomial becomes the bracket of its multi-index."""
    _require_no_constant(P)
    if not 1 <= j <= P.e:
        raise ValueError(f"output letter {j} out of range 1..{P.e}")
    return AlgebraElement({Word((Bracket(nu),)): c for nu, c in P.components[j - 1].items()})


def _single_bracket_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    # both supported on one-bracket words; merge pairwise
    acc: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            merged = Word((bracket_product(wa.brackets[0], wb.brackets[0]),))
            acc[merged] = acc.get(merged, 0) + ca * cb
    return AlgebraElement(acc)


def _check_output_alphabet(P: PolyMap, x: AlgebraElement):
    dim = x.dimension()
    if dim is not None and dim != P.e:
        raise ValueError(
            f"word alphabet {dim} does not match the map's output dimension {P.e}"
        )


def phi_P(P: PolyMap, x) -> AlgebraElement:
    """Concatenation morphism realizing increment transformation.

    Brackets over the output alphabet map to products of letter images in
    the input brackets; words map to concatenations of bracket images.
    """
    _require_no_constant(P)
    x = as_element(x)
    _check_output_alphabet(P, x)
    letter_images = {}
    bracket_images: dict = {}

    def bracket_image(b: Bracket) -> AlgebraElement:
        hit = bracket_images.get(b)
        if hit is not None:
            return hit
        img = None
        for j in b.letters:
            if j not in letter_images:
                letter_images[j] = p_diamond(P, j)
            img = letter_images[j] if img is None else _single_bracket_mul(img, letter_images[j])
        bracket_images[b] = img
        return img

    acc: dict = {}
    for w, c in x.terms.items():
        img = AlgebraElement({EMPTY_WORD: 1})
        for b in w.brackets:
            img = concat_product(img, bracket_image(b))
            if not img:
                break
        for w2, c2 in img.terms.items():
            acc[w2] = acc.get(w2, 0) + c * c2
    return AlgebraElement(acc)


def iota(component, d: int) -> AlgebraElement:
    """Embed one polynomial component via letters: variable powers become quasi-shuffle powers."""
    total = AlgebraElement()
    for nu, c in dict(component).items():
        nu = tuple(int(v) for v in nu)
        if len(nu) != d:
            raise ValueError(f"multi-index {nu} does not match dimension {d}")
        c = Fraction(c)
        if not c:
            continue
        if sum(nu) == 0:
            raise ValueError("constant term present; shift the polynomial first")
        prod = None
        for i, e in enumerate(nu, start=1):
            if not e:
                continue
            letter = AlgebraElement({Word((Bracket.from_letters([i], d),)): 1})
            for _ in range(e):
                prod = letter if prod is None else quasi_shuffle(prod, letter)
        total = total + c * prod
    return total


def lambda_P(P: PolyMap, x) -> AlgebraElement:
    """Quasi-shuffle morphism realizing series transformation.

    Output letters map to the iota images of the components; brackets are
    bullet products of letter images, words are left-nested half-shuffles of
    bracket images.
    """
    _require_no_constant(P)
    x = as_element(x)
    _check_output_alphabet(P, x)
    letter_images: dict = {}
    bracket_images: dict = {}
    word_images: dict = {EMPTY_WORD: AlgebraElement({EMPTY_WORD: 1})}

    def bracket_image(b: Bracket) -> AlgebraElement:
        hit = bracket_images.get(b)
        if hit is not None:
            return hit
        img = None
        for j in b.letters:
            if j not in letter_images:
                letter_images[j] = iota(P.components[j - 1], P.d)
            nxt = letter_images[j]
            img = nxt if img is None else half_shuffle_bullet(img, nxt)
        bracket_images[b] = img
        return img

    def word_image(w: Word) -> AlgebraElement:
        hit = word_images.get(w)
        if hit is not None:
            return hit
        head, last = w.split_last()
        if head.is_empty:
            img = bracket_image(last)
        else:
            img = half_shuffle_succ(word_image(head), bracket_image(last))
        word_images[w] = img
        return img

    acc: dict = {}
    for w, c in x.terms.items():
        for w2, c2 in word_image(w).terms.items():
            acc[w2] = acc.get(w2, 0) + c * c2
    return AlgebraElement(acc)


def iss_poly_increments(x: TimeSeries, P: PolyMap, window, order: int) -> WordFunctional:
    """Signature of the transformed increment stream (P(dx_j))."""
    _require_no_constant(P)
    if P.d != x.d:
        raise ValueError(f"map input dimension {P.d} does not match the series dimension {x.d}")
    n, m = check_window(window, x.N)
    rows = [poly_eval(P, x.increment_row(j)) for j in range(n + 1, m + 1)]
    values = iss_increments(rows, P.e, order, x.mode)
    return WordFunctional(P.e, order, values, x.mode)


# ---------------------------------------------------------------------------
# composition of maps


def _poly_mul(a: dict, b: dict) -> dict:
    acc: dict = {}
    for nu, c in a.items():
        for mu, k in b.items():
            key = tuple(x + y for x, y in zip(nu, mu))
            acc[key] = acc.get(key, 0) + c * k
    return {key: v for key, v in acc.items() if v}


def polymap_compose(P: PolyMap, Q: PolyMap) -> PolyMap:
    """Substitute Q into P; the result maps Q's domain to P's codomain."""
    if P.d != Q.e:
        raise ValueError(
            f"inner dimensions do not match: the outer map consumes {P.d}, the inner produces {Q.e}"
        )
    zero_nu = (0,) * Q.d
    comps = []
    for comp in P.components:
        acc: dict = {}
        for nu, c in comp.items():
            term = {zero_nu: Fraction(c)}
            for i, e in enumerate(nu):
                for _ in range(e):
                    term = _poly_mul(term, Q.components[i])
            for mu, k in term.items():
                acc[mu] = acc.get(mu, 0) + k
        comps.append({mu: k for mu, k in acc.items() if k})
    return PolyMap(Q.d, P.e, comps)
