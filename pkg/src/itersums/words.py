"""Exact algebra of words over an extended bracket alphabet.

The base alphabet is {1, ..., d}.  A bracket is a commuting monomial in the
letters, stored as its exponent vector over a fixed d; a word is a finite
sequence of brackets, the empty sequence being the unit word ``e``.  Rational
linear combinations of words carry the quasi-shuffle product, its two
half-shuffles, the shuffle product, concatenation and the deconcatenation
coproduct.

Serialization grammar (bit-exact, shared by the CLI and all JSON forms):

    word    := "e" | bracket+
    bracket := "[" letter ("," letter)* "]"   -- letters ascending, repeated
    element := "0" | term (" + " term)*       -- term := scalar "*" word

Scalars print as integers or "p/q".

All values are immutable after construction and every operation is a pure
function.  The module-level caches only ever hold results of pure functions
keyed by immutable words, so concurrent use is safe and results do not
depend on interleaving.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from math import comb


class Bracket:
    """A commuting monomial over the alphabet, e.g. ``[1,1,2]`` = 1st letter squared times 2nd."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        exps = tuple(int(v) for v in exponents)
        if not exps:
            raise ValueError("bracket exponent vector must have length d >= 1")
        if any(v < 0 for v in exps):
            raise ValueError(f"bracket exponents must be non-negative: {exps}")
        if sum(exps) == 0:
            raise ValueError("empty bracket (all exponents zero) is not allowed")
        self.exponents = exps

    @classmethod
    def from_letters(cls, letters, d=None):
        ls = tuple(int(v) for v in letters)
        if not ls:
            raise ValueError("bracket needs at least one letter")
        if d is None:
            d = max(ls)
        if min(ls) < 1 or max(ls) > d:
            raise ValueError(f"letters {ls} out of range 1..{d}")
        exps = [0] * d
        for letter in ls:
            exps[letter - 1] += 1
        return cls(exps)

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def letters(self) -> tuple[int, ...]:
        """Letters with repetition, ascending, e.g. (1, 1, 2)."""
        out = []
        for i, v in enumerate(self.exponents, start=1):
            out.extend([i] * v)
        return tuple(out)

    def promoted(self, d: int) -> "Bracket":
        if d < self.d:
            raise ValueError(f"cannot shrink a bracket over {self.d} letters to {d}")
        if d == self.d:
            return self
        return Bracket(self.exponents + (0,) * (d - self.d))

    def __eq__(self, other):
        return isinstance(other, Bracket) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return "[" + ",".join(str(letter) for letter in self.letters) + "]"


class Word:
    """A finite sequence of brackets; the empty sequence is the unit word ``e``."""

    __slots__ = ("brackets",)

    def __init__(self, brackets=()):
        bs = tuple(brackets)
        for b in bs:
            if not isinstance(b, Bracket):
                raise TypeError(f"expected Bracket, got {type(b).__name__}")
        if len({b.d for b in bs}) > 1:
            raise ValueError("all brackets of a word must share the alphabet dimension")
        self.brackets = bs

    @property
    def is_empty(self) -> bool:
        return not self.brackets

    @property
    def weight(self) -> int:
        return sum(b.weight for b in self.brackets)

    @property
    def d(self):
        """Alphabet dimension, or None for the unit word (it lives in every dimension)."""
        return self.brackets[0].d if self.brackets else None

    def __len__(self):
        return len(self.brackets)

    def key(self):
        """Canonical sort key: graded by weight, then length, then bracket letters."""
        return (self.weight, len(self.brackets), tuple(b.letters for b in self.brackets))

    def prefix(self, i: int) -> "Word":
        return Word(self.brackets[:i])

    def suffix(self, i: int) -> "Word":
        return Word(self.brackets[i:])

    def split_last(self):
        if not self.brackets:
            raise ValueError("the unit word has no last bracket")
        return Word(self.brackets[:-1]), self.brackets[-1]

    def appended(self, bracket: Bracket) -> "Word":
        return Word(self.brackets + (bracket,))

    def promoted(self, d: int) -> "Word":
        if self.is_empty or self.d == d:
            return self
        return Word(b.promoted(d) for b in self.brackets)

    def __eq__(self, other):
        return isinstance(other, Word) and self.brackets == other.brackets

    def __hash__(self):
        return hash(self.brackets)

    def __repr__(self):
        if not self.brackets:
            return "e"
        return "".join(repr(b) for b in self.brackets)


EMPTY_WORD = Word()


def _format_scalar(c) -> str:
    return repr(c) if isinstance(c, float) else str(c)


class AlgebraElement:
    """A finite linear combination of words.

    Coefficients are exact rationals (the default; ints are normalized to
    ``Fraction``) or float64 -- one mode per element, set by whoever builds
    it.  Exact zeros are dropped eagerly.  Instances are immutable: no method
    mutates ``self`` and ``terms`` must be treated as read-only.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for w, c in terms.items():
                if not isinstance(w, Word):
                    raise TypeError(f"expected Word key, got {type(w).__name__}")
                if not isinstance(c, (Fraction, float)):
                    c = Fraction(c)
                if c == 0:
                    continue
                data[w] = c
        self.terms = data

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def from_word(cls, w: Word, coefficient=1) -> "AlgebraElement":
        return cls({w: coefficient})

    def coefficient(self, w: Word):
        return self.terms.get(w, Fraction(0))

    def dimension(self):
        """Common alphabet dimension of the support, or None if supported on ``e`` only."""
        dim = None
        for w in self.terms:
            if w.d is not None:
                if dim is None:
                    dim = w.d
                elif dim != w.d:
                    raise ValueError("element mixes words of different alphabet dimensions")
        return dim

    def homogeneous_part(self, n: int) -> "AlgebraElement":
        return AlgebraElement({w: c for w, c in self.terms.items() if w.weight == n})

    def promoted(self, d: int) -> "AlgebraElement":
        return AlgebraElement({w.promoted(d): c for w, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return AlgebraElement(acc)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (AlgebraElement, Word)):
            raise TypeError("use quasi_shuffle/shuffle/concat_product to multiply elements")
        return AlgebraElement({w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{_format_scalar(self.terms[w])}*{w!r}" for w in sorted(self.terms, key=Word.key)]
        return " + ".join(parts)


def as_element(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, Word):
        return AlgebraElement({x: 1})
    raise TypeError(f"expected Word or AlgebraElement, got {type(x).__name__}")


class TensorElement:
    """A linear combination of word pairs u(x)v -- the target of the coproduct."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for pair, c in terms.items():
                u, v = pair
                if not (isinstance(u, Word) and isinstance(v, Word)):
                    raise TypeError("tensor terms must be pairs of words")
                if not isinstance(c, (Fraction, float)):
                    c = Fraction(c)
                if c == 0:
                    continue
                data[(u, v)] = c
        self.terms = data

    @classmethod
    def from_pair(cls, left, right) -> "TensorElement":
        left, right = as_element(left), as_element(right)
        acc = {}
        for u, cu in left.terms.items():
            for v, cv in right.terms.items():
                acc[(u, v)] = cu * cv
        return cls(acc)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        acc = dict(self.terms)
        for pair, c in other.terms.items():
            acc[pair] = acc.get(pair, 0) + c
        return TensorElement(acc)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TensorElement({pair: -c for pair, c in self.terms.items()})

    def __mul__(self, scalar):
        return TensorElement({pair: c * scalar for pair, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for u, v in sorted(self.terms, key=lambda p: (p[0].key(), p[1].key())):
            c = self.terms[(u, v)]
            head = "" if c == 1 else f"{_format_scalar(c)}*"
            parts.append(f"{head}{u!r}⊗{v!r}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# products and coproduct


def bracket_product(a: Bracket, b: Bracket) -> Bracket:
    """Merge two brackets by adding exponent vectors (the commutative product of brackets)."""
    if a.d != b.d:
        raise ValueError(f"alphabet dimension mismatch: {a.d} vs {b.d}")
    return Bracket(x + y for x, y in zip(a.exponents, b.exponents))


def _check_dimensions(x: AlgebraElement, y: AlgebraElement):
    dx, dy = x.dimension(), y.dimension()
    if dx is not None and dy is not None and dx != dy:
        raise ValueError(f"alphabet dimension mismatch: {dx} vs {dy}")


def _add_into(acc: dict, w: Word, c):
    acc[w] = acc.get(w, 0) + c


_STAR_CACHE: dict = {}


def _star_words(u: Word, v: Word) -> AlgebraElement:
    # recursion: (pa) * (qb) = (p * qb)a + (pa * q)b + (p * q)[ab]
    if u.is_empty:
        return AlgebraElement({v: 1})
    if v.is_empty:
        return AlgebraElement({u: 1})
    if v.key() < u.key():
        u, v = v, u  # the product is commutative; cache one orientation only
    key = (u, v)
    hit = _STAR_CACHE.get(key)
    if hit is not None:
        return hit
    p, a = u.split_last()
    q, b = v.split_last()
    acc: dict = {}
    for w, c in _star_words(p, v).terms.items():
        _add_into(acc, w.appended(a), c)
    for w, c in _star_words(u, q).terms.items():
        _add_into(acc, w.appended(b), c)
    ab = bracket_product(a, b)
    for w, c in _star_words(p, q).terms.items():
        _add_into(acc, w.appended(ab), c)
    out = AlgebraElement(acc)
    _STAR_CACHE[key] = out
    return out


def quasi_shuffle(x, y) -> AlgebraElement:
    """Quasi-shuffle product, extended bilinearly; ``e`` acts as the unit."""
    x, y = as_element(x), as_element(y)
    _check_dimensions(x, y)
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            cuv = cu * cv
            for w, c in _star_words(u, v).terms.items():
                _add_into(acc, w, cuv * c)
    return AlgebraElement(acc)


def half_shuffle_succ(x, y) -> AlgebraElement:
    """Half-shuffle keeping the last bracket of the right factor: u > (vb) = (u * v)b.

    Unital rules: e > v = v and u > e = 0; the product e > e is excluded.
    """
    x, y = as_element(x), as_element(y)
    _check_dimensions(x, y)
    if x.coefficient(EMPTY_WORD) != 0 and y.coefficient(EMPTY_WORD) != 0:
        raise ValueError("the half-shuffle of two unit words is not defined")
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            if v.is_empty:
                continue
            cuv = cu * cv
            if u.is_empty:
                _add_into(acc, v, cuv)
                continue
            q, b = v.split_last()
            for w, c in _star_words(u, q).terms.items():
                _add_into(acc, w.appended(b), cuv * c)
    return AlgebraElement(acc)


def half_shuffle_bullet(x, y) -> AlgebraElement:
    """Half-shuffle merging the last brackets: (ua) . (vb) = (u * v)[ab].

    Unital rules: e . v = v . e = 0; the product e . e is excluded.
    """
    x, y = as_element(x), as_element(y)
    _check_dimensions(x, y)
    if x.coefficient(EMPTY_WORD) != 0 and y.coefficient(EMPTY_WORD) != 0:
        raise ValueError("the bullet product of two unit words is not defined")
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            if u.is_empty or v.is_empty:
                continue
            cuv = cu * cv
            p, a = u.split_last()
            q, b = v.split_last()
            ab = bracket_product(a, b)
            for w, c in _star_words(p, q).terms.items():
                _add_into(acc, w.appended(ab), cuv * c)
    return AlgebraElement(acc)


def area(x, y) -> AlgebraElement:
    """Antisymmetrized half-shuffle: area(u, v) = u > v - v > u."""
    return half_shuffle_succ(x, y) - half_shuffle_succ(y, x)


_SHUFFLE_CACHE: dict = {}


def _shuffle_words(u: Word, v: Word) -> AlgebraElement:
    # direct interleaving enumeration; independent of the quasi-shuffle recursion
    if u.is_empty:
        return AlgebraElement({v: 1})
    if v.is_empty:
        return AlgebraElement({u: 1})
    if v.key() < u.key():
        u, v = v, u
    key = (u, v)
    hit = _SHUFFLE_CACHE.get(key)
    if hit is not None:
        return hit
    p, q = len(u), len(v)
    acc: dict = {}
    for positions in itertools.combinations(range(p + q), p):
        slots: list = [None] * (p + q)
        for pos, b in zip(positions, u.brackets):
            slots[pos] = b
        rest = iter(v.brackets)
        merged = tuple(b if b is not None else next(rest) for b in slots)
        _add_into(acc, Word(merged), 1)
    out = AlgebraElement(acc)
    _SHUFFLE_CACHE[key] = out
    return out


def shuffle(x, y) -> AlgebraElement:
    """Shuffle product (interleavings only, no bracket merging), extended bilinearly."""
    x, y = as_element(x), as_element(y)
    _check_dimensions(x, y)
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            cuv = cu * cv
            for w, c in _shuffle_words(u, v).terms.items():
                _add_into(acc, w, cuv * c)
    return AlgebraElement(acc)


def concat(u: Word, v: Word) -> Word:
    if u.d is not None and v.d is not None and u.d != v.d:
        raise ValueError(f"alphabet dimension mismatch: {u.d} vs {v.d}")
    return Word(u.brackets + v.brackets)


def concat_product(x, y, max_weight=None) -> AlgebraElement:
    """Concatenation product, extended bilinearly; optionally truncated by total weight."""
    x, y = as_element(x), as_element(y)
    _check_dimensions(x, y)
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            w = concat(u, v)
            if max_weight is not None and w.weight > max_weight:
                continue
            _add_into(acc, w, cu * cv)
    return AlgebraElement(acc)


def deconcatenate(x):
    """All prefix/suffix splittings.

    For a ``Word`` returns the list of the len(w)+1 pairs in order, including
    the two trivial ones.  For an ``AlgebraElement`` extends linearly and
    returns a ``TensorElement``.
    """
    if isinstance(x, Word):
        return [(x.prefix(i), x.suffix(i)) for i in range(len(x) + 1)]
    x = as_element(x)
    acc: dict = {}
    for w, c in x.terms.items():
        for i in range(len(w) + 1):
            pair = (w.prefix(i), w.suffix(i))
            acc[pair] = acc.get(pair, 0) + c
    return TensorElement(acc)


def project_to_brackets(x) -> AlgebraElement:
    """Projection onto the span of length-one words (kills ``e`` and longer words)."""
    x = as_element(x)
    return AlgebraElement({w: c for w, c in x.terms.items() if len(w) == 1})


# ---------------------------------------------------------------------------
# grading and enumeration


def dims(d: int, nmax: int) -> tuple[int, ...]:
    """Dimensions of the weight-graded pieces of the word algebra, degrees 0..nmax.

    Computed by the recursion dim H_n = sum_j C(d+j-1, d-1) dim H_{n-j} with
    dim H_0 = 1.
    """
    if d < 1:
        raise ValueError("alphabet dimension must be >= 1")
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    out = [1]
    for n in range(1, nmax + 1):
        out.append(sum(comb(d + j - 1, d - 1) * out[n - j] for j in range(1, n + 1)))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def enumerate_brackets(d: int, max_weight: int) -> tuple[Bracket, ...]:
    """All brackets of weight 1..max_weight over {1..d}, in canonical order."""
    out = []
    for k in range(1, max_weight + 1):
        for letters in itertools.combinations_with_replacement(range(1, d + 1), k):
            out.append(Bracket.from_letters(letters, d))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def enumerate_words(d: int, max_weight: int) -> tuple[Word, ...]:
    """All words of weight <= max_weight over {1..d}, in canonical order."""
    brackets = enumerate_brackets(d, max_weight)
    out = [EMPTY_WORD]

    def extend(prefix, budget):
        for b in brackets:
            if b.weight > budget:
                continue
            grown = prefix + (b,)
            out.append(Word(grown))
            extend(grown, budget - b.weight)

    extend((), max_weight)
    return tuple(sorted(out, key=Word.key))


def promote(x, d: int):
    """Pad exponent vectors with zeros so that x lives over the alphabet {1..d}."""
    if isinstance(x, (Bracket, Word, AlgebraElement)):
        return x.promoted(d)
    raise TypeError(f"cannot promote {type(x).__name__}")


# ---------------------------------------------------------------------------
# text forms


def parse_word(text: str, d=None) -> Word:
    """Parse the word grammar; d defaults to the largest letter present."""
    s = text.strip()
    if s == "e":
        return EMPTY_WORD
    if not s:
        raise ValueError("empty word text (use 'e' for the unit word)")
    groups = []
    pos = 0
    while pos < len(s):
        if s[pos] != "[":
            raise ValueError(f"invalid word {text!r}: expected '[' at position {pos}")
        end = s.find("]", pos)
        if end < 0:
            raise ValueError(f"invalid word {text!r}: unterminated bracket")
        inner = s[pos + 1 : end]
        try:
            letters = tuple(int(tok) for tok in inner.split(","))
        except ValueError:
            raise ValueError(f"invalid bracket content {inner!r} in word {text!r}") from None
        if any(letter < 1 for letter in letters):
            raise ValueError(f"letters must be >= 1 in word {text!r}")
        groups.append(letters)
        pos = end + 1
    dim = d if d is not None else max(max(g) for g in groups)
    return Word(Bracket.from_letters(g, dim) for g in groups)


def parse_element(text: str, d=None) -> AlgebraElement:
    """Parse the element grammar: '0' or 'scalar*word' terms joined by ' + '."""
    s = text.strip()
    if s == "0":
        return AlgebraElement()
    if not s:
        raise ValueError("empty element text (use '0' for the zero element)")
    parsed = []
    for raw in s.split(" + "):
        term = raw.strip()
        if "*" in term:
            scalar_text, word_text = term.split("*", 1)
            coefficient = Fraction(scalar_text.strip())
        else:
            coefficient, word_text = Fraction(1), term
        parsed.append((coefficient, parse_word(word_text.strip())))
    target = d
    if target is None:
        seen = [w.d for _, w in parsed if w.d is not None]
        target = max(seen) if seen else 1
    acc: dict = {}
    for coefficient, w in parsed:
        _add_into(acc, w.promoted(target), coefficient)
    return AlgebraElement(acc)
