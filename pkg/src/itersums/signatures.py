"""Iterated-sums signatures of multivariate time series.

A signature pairs words with nested sums of extended increments: a bracket
indexes a product of increment components at one time step, a word indexes a
strictly increasing tuple of steps.  The dynamic program walks words by
length, carrying running prefix sums; ``iss_bruteforce`` enumerates the
nested sums directly and is the independent oracle.

Exact-rational mode is the default and every algebraic identity (Chen,
characters, time-warping invariance) holds exactly there; float64 mode is
the vectorized path for long series.
"""

from __future__ import annotations

import csv
import itertools
from fractions import Fraction

import numpy as np

from .deformation import PowerSeries1, hoffman_coefficients, psi
from .functionals import WordFunctional, convolution
from .words import (
    EMPTY_WORD,
    AlgebraElement,
    Word,
    as_element,
    concat_product,
    enumerate_brackets,
    enumerate_words,
)


def _as_row(row):
    if isinstance(row, (tuple, list)):
        return tuple(row)
    if isinstance(row, np.ndarray):
        return tuple(row.tolist())
    return (row,)


class TimeSeries:
    """A length-N sequence of d-dimensional samples, exact-rational or float64."""

    __slots__ = ("mode", "_rows", "_array")

    def __init__(self, rows, mode: str = "rational"):
        if mode not in ("rational", "float"):
            raise ValueError(f"unknown scalar mode {mode!r}")
        self.mode = mode
        if mode == "float":
            arr = np.asarray(rows, dtype=float)
            if arr.ndim == 1:
                arr = arr[:, None]
            if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
                raise ValueError("a time series needs an N x d table with N, d >= 1")
            self._array = arr
            self._rows = None
        else:
            rs = tuple(tuple(Fraction(v) for v in _as_row(row)) for row in rows)
            if not rs:
                raise ValueError("a time series needs at least one sample")
            d = len(rs[0])
            if d < 1 or any(len(r) != d for r in rs):
                raise ValueError("all rows must share the same positive dimension")
            self._rows = rs
            self._array = None

    @property
    def N(self) -> int:
        return len(self._rows) if self._rows is not None else self._array.shape[0]

    @property
    def d(self) -> int:
        return len(self._rows[0]) if self._rows is not None else self._array.shape[1]

    def row(self, k: int) -> tuple:
        if self._rows is not None:
            return self._rows[k]
        return tuple(self._array[k].tolist())

    def increment_row(self, j: int) -> tuple:
        """delta x_j = x_j - x_{j-1}, for 1 <= j <= N-1."""
        if not 1 <= j <= self.N - 1:
            raise ValueError(f"increment index {j} out of range 1..{self.N - 1}")
        a, b = self.row(j - 1), self.row(j)
        return tuple(y - x for x, y in zip(a, b))

    def increments(self, n: int, m: int):
        """Increment stream for steps n+1..m; rows of tuples (exact) or an array (float)."""
        if self.mode == "float":
            return np.diff(self._array[n : m + 1], axis=0)
        return tuple(self.increment_row(j) for j in range(n + 1, m + 1))

    def window_slice(self, n: int, m: int) -> "TimeSeries":
        """The sub-series of samples n..m (inclusive)."""
        n, m = check_window((n, m), self.N)
        if self.mode == "float":
            return TimeSeries(self._array[n : m + 1], "float")
        return TimeSeries(self._rows[n : m + 1], "rational")

    @classmethod
    def from_csv(cls, source, mode: str = "rational") -> "TimeSeries":
        """Read a comma-separated table, one row per time point.

        A non-numeric first row is treated as a header.  Rational entries may
        be written as "p/q"; decimals are accepted in both modes.
        """
        if hasattr(source, "read"):
            return cls._from_csv_file(source, mode)
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return cls._from_csv_file(handle, mode)

    @classmethod
    def _from_csv_file(cls, handle, mode):
        reader = csv.reader(handle)
        rows = []
        width = None
        for cells in reader:
            line = reader.line_num
            if not cells or all(not c.strip() for c in cells):
                continue
            parsed = []
            bad = None
            for cell in cells:
                try:
                    parsed.append(_parse_scalar(cell, mode))
                except (ValueError, ZeroDivisionError):
                    bad = cell
                    break
            if bad is not None:
                if not rows and width is None:
                    width = len(cells)  # header row fixes the column count
                    continue
                raise ValueError(f"CSV row {line}: cannot parse {bad!r} as a number")
            if width is None:
                width = len(parsed)
            elif len(parsed) != width:
                raise ValueError(f"CSV row {line}: expected {width} columns, found {len(parsed)}")
            rows.append(parsed)
        if not rows:
            raise ValueError("CSV input contains no data rows")
        return cls(rows, mode)


def _parse_scalar(text: str, mode: str):
    s = text.strip()
    if mode == "rational":
        return Fraction(s)
    try:
        return float(s)
    except ValueError:
        return float(Fraction(s))


def check_window(window, n_points: int) -> tuple[int, int]:
    """Validate a window (n, m) of sample indices: 0 <= n <= m <= N-1."""
    try:
        n, m = window
        n, m = int(n), int(m)
    except (TypeError, ValueError):
        raise ValueError(f"invalid window {window!r}: expected a pair of integers") from None
    if not 0 <= n <= m <= n_points - 1:
        raise ValueError(f"invalid window ({n}, {m}) for a series of {n_points} points")
    return n, m


# ---------------------------------------------------------------------------
# the signature dynamic program


def _monomial(row, exponents):
    out = 1
    for x, e in zip(row, exponents):
        if e == 1:
            out = out * x
        elif e > 1:
            out = out * x**e
    return out


def _words_by_length(d, order):
    groups: dict = {}
    for w in enumerate_words(d, order):
        if len(w):
            groups.setdefault(len(w), []).append(w)
    return groups


def iss_increments(increments, d: int, order: int, mode: str = "rational") -> dict:
    """Signature values of an increment stream; the dynamic program shared by all transforms.

    Walks words by length; the prefix array of w = w'a is the running sum of
    (prefix of w' one step earlier) times the extended increment of a.
    """
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    if mode == "float":
        return _iss_float(increments, d, order)
    return _iss_exact(increments, d, order)


def _iss_exact(increments, d, order):
    rows = [tuple(r) for r in increments]
    T = len(rows)
    dxa = {b: [_monomial(r, b.exponents) for r in rows] for b in enumerate_brackets(d, order)}
    zero = Fraction(0)
    values = {EMPTY_WORD: Fraction(1)}
    prev = {EMPTY_WORD: [Fraction(1)] * (T + 1)}
    for length, group in sorted(_words_by_length(d, order).items()):
        assert length >= 1
        cur = {}
        for w in group:
            parent, last = w.split_last()
            ap = prev[parent]
            da = dxa[last]
            arr = [zero] * (T + 1)
            acc = zero
            for t in range(1, T + 1):
                step = da[t - 1]
                if step:
                    acc = acc + ap[t - 1] * step
                arr[t] = acc
            cur[w] = arr
            if acc:
                values[w] = acc
        prev = cur
    return values


def _iss_float(increments, d, order):
    arr = np.asarray(increments, dtype=float)
    if arr.size == 0:
        arr = arr.reshape(0, d)
    if arr.ndim == 1:
        arr = arr[:, None]
    T = arr.shape[0]
    dxa = {}
    for b in enumerate_brackets(d, order):
        col = np.ones(T)
        for i, e in enumerate(b.exponents):
            if e == 1:
                col = col * arr[:, i]
            elif e > 1:
                col = col * arr[:, i] ** e
        dxa[b] = col
    values = {EMPTY_WORD: 1.0}
    prev = {EMPTY_WORD: np.ones(T + 1)}
    for length, group in sorted(_words_by_length(d, order).items()):
        cur = {}
        for w in group:
            parent, last = w.split_last()
            out = np.empty(T + 1)
            out[0] = 0.0
            np.cumsum(prev[parent][:-1] * dxa[last], out=out[1:])
            cur[w] = out
            values[w] = float(out[-1])
        prev = cur
    return values


def iss(x: TimeSeries, window, order: int) -> WordFunctional:
    """Iterated-sums signature of x over the window, truncated by weight."""
    n, m = check_window(window, x.N)
    values = iss_increments(x.increments(n, m), x.d, order, x.mode)
    return WordFunctional(x.d, order, values, x.mode)


def iss_bruteforce(x: TimeSeries, window, w: Word):
    """Direct nested-sum evaluation of one signature entry; the oracle for ``iss``."""
    n, m = check_window(window, x.N)
    zero = Fraction(0) if x.mode == "rational" else 0.0
    if w.is_empty:
        return zero + 1
    if w.d is not None and w.d != x.d:
        raise ValueError(f"word alphabet {w.d} does not match the series dimension {x.d}")
    rows = [x.increment_row(j) for j in range(n + 1, m + 1)]
    total = zero
    for combo in itertools.combinations(range(len(rows)), len(w)):
        prod = 1
        for t, b in zip(combo, w.brackets):
            prod = prod * _monomial(rows[t], b.exponents)
        total += prod
    return total


# ---------------------------------------------------------------------------
# generalized signatures


def iss_generalized(x: TimeSeries, f: PowerSeries1, window, order: int) -> WordFunctional:
    """Signature with the series f applied per time slice.

    Computed by pairing the plain signature with the deformation: the entry
    at w equals <iss, psi(f, w)>.  The series must cover coefficients up to
    the truncation order.
    """
    if f.order < order:
        raise ValueError(
            f"series order {f.order} < truncation order {order}; pad the series if it is a polynomial"
        )
    base = iss(x, window, order)
    values = {w: base.pair(psi(f, w)) for w in enumerate_words(x.d, order)}
    return WordFunctional(x.d, order, values, x.mode)


def iss_generalized_direct(x: TimeSeries, f: PowerSeries1, window, order: int) -> WordFunctional:
    """Oracle route for ``iss_generalized``: chain per-step factors by convolution.

    Each step contributes counit + sum_k c_k R^k where R is the one-bracket
    expansion of the step's increment, powers taken by concatenation and
    truncated by weight.  Exact in rational mode up to the truncation order.
    """
    if f.order < order:
        raise ValueError(
            f"series order {f.order} < truncation order {order}; pad the series if it is a polynomial"
        )
    n, m = check_window(window, x.N)
    result = WordFunctional.counit(x.d, order, x.mode)
    for j in range(n + 1, m + 1):
        base = phi_extension(x.increment_row(j), order)
        step_terms: dict = {}
        power = base
        _accumulate(step_terms, power, f.coeffs[0])
        for k in range(2, order + 1):
            power = concat_product(power, base, max_weight=order)
            if not power:
                break
            _accumulate(step_terms, power, f.coeffs[k - 1])
        step_terms[EMPTY_WORD] = 1
        result = convolution(result, WordFunctional(x.d, order, step_terms, x.mode))
    return result


def _accumulate(acc: dict, elem: AlgebraElement, coefficient):
    if not coefficient:
        return
    for w, c in elem.terms.items():
        acc[w] = acc.get(w, 0) + coefficient * c


def ds_plus(x: TimeSeries, p: int, window, order: int) -> WordFunctional:
    """Higher-order discrete signature of order p.

    Equals the letters-only projection of the generalized signature for the
    truncated exponential t + t^2/2! + ... + t^p/p!; supported on words whose
    brackets are all single letters.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    f_p = hoffman_coefficients("exp", p).padded(max(order, p))
    return pi_project(iss_generalized(x, f_p, window, order))


def _letters_only(w: Word) -> bool:
    return all(b.weight == 1 for b in w.brackets)


def pi_project(s):
    """Keep only words all of whose brackets are single letters.

    The concatenation-morphism projection: identity on single-letter words,
    zero on any word containing a bracket of weight >= 2.  Works on words,
    elements and functionals, returning the same kind.
    """
    if isinstance(s, (Word, AlgebraElement)):
        x = as_element(s)
        return AlgebraElement({w: c for w, c in x.terms.items() if _letters_only(w)})
    if isinstance(s, WordFunctional):
        vals = {w: v for w, v in s.values.items() if _letters_only(w)}
        return WordFunctional(s.d, s.order, vals, s.mode)
    raise TypeError(f"cannot project {type(s).__name__}")


# ---------------------------------------------------------------------------
# the quasi-shuffle structure on scalar series


def ts_quasi_shuffle(x: TimeSeries, y: TimeSeries, kind: str) -> TimeSeries:
    """Half-shuffle ("succ") or diagonal product ("bullet") of scalar series.

    Returns the series of partial sums with entry 0 equal to 0:
    succ_k = sum_{j<=k} (x_{j-1} - x_0) dy_j, bullet_k = sum_{j<=k} dx_j dy_j.
    """
    if kind not in ("succ", "bullet"):
        raise ValueError(f"unknown kind {kind!r}; expected 'succ' or 'bullet'")
    if x.d != 1 or y.d != 1:
        raise ValueError("series quasi-shuffle operations are defined for scalar series")
    if x.N != y.N:
        raise ValueError(f"length mismatch: {x.N} vs {y.N}")
    if x.mode != y.mode:
        raise ValueError("both series must use the same scalar mode")
    xs = [x.row(k)[0] for k in range(x.N)]
    ys = [y.row(k)[0] for k in range(y.N)]
    acc = xs[0] * 0
    out = [acc]
    for k in range(1, x.N):
        dy = ys[k] - ys[k - 1]
        if kind == "succ":
            acc = acc + (xs[k - 1] - xs[0]) * dy
        else:
            acc = acc + (xs[k] - xs[k - 1]) * dy
        out.append(acc)
    return TimeSeries([[v] for v in out], x.mode)


def sigma_eval(x: TimeSeries, w: Word) -> TimeSeries:
    """Evaluate the prefix-signature series of a word: entry k is <iss(x, (0, k)), w>.

    Brackets are built from the letter series by the diagonal product, words
    by the half-shuffle, following the free quasi-shuffle structure of
    scalar series.
    """
    if not isinstance(w, Word) or w.is_empty:
        raise ValueError("sigma is defined on nonempty words")
    if w.d is not None and w.d != x.d:
        raise ValueError(f"word alphabet {w.d} does not match the series dimension {x.d}")

    def letter_series(i: int) -> TimeSeries:
        base = x.row(0)[i - 1]
        return TimeSeries([[x.row(k)[i - 1] - base] for k in range(x.N)], x.mode)

    def bracket_series(b) -> TimeSeries:
        letters = b.letters
        s = letter_series(letters[0])
        for letter in letters[1:]:
            s = ts_quasi_shuffle(s, letter_series(letter), "bullet")
        return s

    out = bracket_series(w.brackets[0])
    for b in w.brackets[1:]:
        out = ts_quasi_shuffle(out, bracket_series(b), "succ")
    return out


def phi_extension(z, order: int) -> AlgebraElement:
    """One-step geometric expansion of a sample: sum of z^a a over brackets of weight <= order."""
    zt = tuple(z)
    d = len(zt)
    if d < 1:
        raise ValueError("the sample must have dimension >= 1")
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    acc = {}
    for b in enumerate_brackets(d, order):
        coefficient = _monomial(zt, b.exponents)
        if coefficient:
            acc[Word((b,))] = coefficient
    return AlgebraElement(acc)
