"""Truncated word series: linear functionals on words of weight <= order."""

from __future__ import annotations

from fractions import Fraction

from .words import EMPTY_WORD, AlgebraElement, Word, enumerate_words


class WordFunctional:
    """A linear functional on words, stored on the basis of weight <= order.

    Entries absent from ``values`` are zero.  The scalar mode is either
    "rational" (exact ``Fraction`` entries, zeros dropped eagerly) or "float"
    (float64 entries kept as computed; tiny values are dropped only when
    serializing).  Words of weight above the truncation order are not stored
    and pairing against them raises rather than silently returning garbage.
    """

    __slots__ = ("d", "order", "mode", "values")

    def __init__(self, d: int, order: int, values=None, mode: str = "rational"):
        if d < 1:
            raise ValueError("alphabet dimension must be >= 1")
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if mode not in ("rational", "float"):
            raise ValueError(f"unknown scalar mode {mode!r}")
        data = {}
        for w, v in (values or {}).items():
            if not isinstance(w, Word):
                raise TypeError(f"expected Word key, got {type(w).__name__}")
            if w.d is not None and w.d != d:
                raise ValueError(f"word {w!r} is not over the alphabet of dimension {d}")
            if w.weight > order:
                raise ValueError(f"word {w!r} exceeds the truncation order {order}")
            if mode == "rational":
                v = v if isinstance(v, Fraction) else Fraction(v)
                if v == 0:
                    continue
            else:
                v = float(v)
                if v == 0.0:
                    v = 0.0  # normalize -0.0
            data[w] = v
        self.d = d
        self.order = order
        self.mode = mode
        self.values = data

    @classmethod
    def counit(cls, d: int, order: int, mode: str = "rational") -> "WordFunctional":
        return cls(d, order, {EMPTY_WORD: 1}, mode)

    def _zero(self):
        return Fraction(0) if self.mode == "rational" else 0.0

    def value(self, w: Word):
        if w.weight > self.order:
            raise ValueError(f"word {w!r} exceeds the truncation order {self.order}")
        return self.values.get(w, self._zero())

    def pair(self, x):
        """Evaluate on a word or a linear combination of words."""
        x = AlgebraElement({x: 1}) if isinstance(x, Word) else x
        total = self._zero()
        for w, c in x.terms.items():
            v = self.value(w)
            if v:
                total += c * v
        return total

    def sorted_words(self):
        return sorted(self.values, key=Word.key)

    def entries_strings(self, drop_below=1e-12) -> dict:
        """Serializable entries in canonical word order.

        In float mode entries with |value| < drop_below are omitted (pass
        drop_below=None to keep everything).
        """
        out = {}
        for w in self.sorted_words():
            v = self.values[w]
            if self.mode == "float":
                if drop_below is not None and abs(v) < drop_below:
                    continue
                out[repr(w)] = repr(v)
            else:
                out[repr(w)] = str(v)
        return out

    def __eq__(self, other):
        if not isinstance(other, WordFunctional):
            return NotImplemented
        if (self.d, self.order, self.mode) != (other.d, other.order, other.mode):
            return False
        keys = set(self.values) | set(other.values)
        return all(self.value(w) == other.value(w) for w in keys)

    __hash__ = None

    def __repr__(self):
        entries = ", ".join(f"{w!r}: {v}" for w, v in sorted(self.values.items(), key=lambda kv: kv[0].key()))
        return f"WordFunctional(d={self.d}, order={self.order}, mode={self.mode}, {{{entries}}})"


def convolution(left: WordFunctional, right: WordFunctional) -> WordFunctional:
    """Convolution against the deconcatenation coproduct.

    <RT, w> = sum over splittings w = uv of <R, u><T, v>; associative but not
    commutative.  Both factors must share alphabet dimension, truncation
    order and scalar mode.
    """
    if (left.d, left.order, left.mode) != (right.d, right.order, right.mode):
        raise ValueError(
            "convolution needs matching alphabet dimension, truncation order and mode: "
            f"({left.d}, {left.order}, {left.mode}) vs ({right.d}, {right.order}, {right.mode})"
        )
    out = {}
    for w in enumerate_words(left.d, left.order):
        total = left._zero()
        for i in range(len(w) + 1):
            a = left.values.get(w.prefix(i))
            if not a:
                continue
            b = right.values.get(w.suffix(i))
            if b:
                total += a * b
        if total or left.mode == "float":
            out[w] = total
    return WordFunctional(left.d, left.order, out, left.mode)
