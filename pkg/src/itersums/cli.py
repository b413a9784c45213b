"""Batch command-line front end.

Three subcommands: ``sig`` computes a signature transform of a CSV time
series and writes a JSON word functional, ``algebra`` evaluates a small
word-algebra expression, ``dims`` prints the graded dimension table.
Output bytes are deterministic for fixed input and flags.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 failed
--verify cross-check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from . import __version__
from .deformation import PowerSeries1, deformed_product, psi, psi_inverse
from .polymaps import (
    PolyMap,
    apply_polymap,
    iss_poly_increments,
    lambda_P,
    phi_P,
    poly_shift,
)
from .signatures import (
    TimeSeries,
    check_window,
    ds_plus,
    iss,
    iss_bruteforce,
    iss_generalized,
    iss_generalized_direct,
    pi_project,
)
from .words import (
    AlgebraElement,
    TensorElement,
    area,
    as_element,
    deconcatenate,
    dims,
    enumerate_words,
    half_shuffle_bullet,
    half_shuffle_succ,
    parse_word,
    promote,
    quasi_shuffle,
    shuffle,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_VERIFY = 4


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itersums",
        description="Iterated-sums signatures and the quasi-shuffle word algebra.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sig = sub.add_parser("sig", help="compute a signature transform of a CSV time series")
    sig.add_argument("input", help="CSV file: one row per time point, d numeric columns, optional header")
    sig.add_argument(
        "--transform",
        required=True,
        choices=["iss", "iss-f", "ds-plus", "p-inc", "p-series"],
        help="iss: plain signature; iss-f: series-deformed; ds-plus: higher-order discrete; "
        "p-inc: signature of polynomially transformed increments; p-series: signature of the "
        "polynomially transformed series",
    )
    sig.add_argument("--d", type=int, default=None, help="alphabet dimension (default: CSV column count)")
    sig.add_argument("--M", type=int, required=True, help="truncation order by weight")
    sig.add_argument("--window", default=None, help="window as n:m over sample indices (default 0:N-1)")
    sig.add_argument("--mode", choices=["rational", "float"], default="rational")
    sig.add_argument("--f", default=None, help="series coefficients 'c1,c2,...' (exact rationals; polynomial semantics)")
    sig.add_argument("--p", type=int, default=None, help="order for --transform ds-plus")
    sig.add_argument("--poly", default=None, help="path of a polynomial-map JSON file")
    sig.add_argument(
        "--verify",
        action="store_true",
        help="cross-check the output against the independent oracle for the transform; exit 4 on mismatch",
    )
    sig.add_argument("--out", default=None, help="output path (default: stdout)")

    alg = sub.add_parser("algebra", help="evaluate a word-algebra expression")
    alg.add_argument(
        "expr",
        help="e.g. \"qsh([3],[5])\", \"dec([1][2])\", \"psi(1,1; [3][5])\"; operators: "
        "qsh sh succ bul area dec psi psiinv qshf succf bulf areaf phiP lambdaP",
    )
    alg.add_argument("--d", type=int, default=None, help="force an alphabet dimension")
    alg.add_argument("--out", default=None)

    dm = sub.add_parser("dims", help="print the graded dimension table")
    dm.add_argument("--d", type=int, required=True)
    dm.add_argument("--nmax", type=int, required=True)
    dm.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        if args.command == "sig":
            text = _cmd_sig(args)
        elif args.command == "algebra":
            text = _cmd_algebra(args)
        else:
            text = _cmd_dims(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    _emit(text, args.out)
    return EXIT_OK


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


def _emit(text: str, out_path):
    if not text.endswith("\n"):
        text += "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# sig


def _cmd_sig(args) -> str:
    if args.M < 1:
        raise CommandError(EXIT_CONFIG, "--M must be >= 1")
    f_series = _parse_f(args.f) if args.f is not None else None
    poly = _load_poly(args.poly) if args.poly is not None else None
    transform = args.transform
    if transform == "iss-f" and f_series is None:
        raise CommandError(EXIT_CONFIG, "--transform iss-f requires --f")
    if transform == "ds-plus" and (args.p is None or args.p < 1):
        raise CommandError(EXIT_CONFIG, "--transform ds-plus requires --p >= 1")
    if transform in ("p-inc", "p-series") and poly is None:
        raise CommandError(EXIT_CONFIG, f"--transform {transform} requires --poly")
    if transform == "p-inc" and poly.has_constant_term:
        raise CommandError(EXIT_CONFIG, "p-inc needs a polynomial map with P(0) = 0")

    series = _load_series(args.input, args.mode)
    if args.d is not None and args.d != series.d:
        raise CommandError(EXIT_DATA, f"--d {args.d} does not match the CSV column count {series.d}")
    if poly is not None and poly.d != series.d:
        raise CommandError(
            EXIT_CONFIG, f"polynomial map consumes dimension {poly.d}, the data has {series.d}"
        )
    window = _parse_window(args.window, series.N)

    try:
        if transform == "iss":
            functional = iss(series, window, args.M)
        elif transform == "iss-f":
            functional = iss_generalized(series, f_series.padded(args.M), window, args.M)
        elif transform == "ds-plus":
            functional = ds_plus(series, args.p, window, args.M)
        elif transform == "p-inc":
            functional = iss_poly_increments(series, poly, window, args.M)
        else:
            functional = iss(apply_polymap(poly, series), window, args.M)
    except ValueError as exc:
        raise CommandError(EXIT_CONFIG, str(exc)) from exc

    if args.verify:
        _verify_sig(transform, series, poly, f_series, args, window, functional)

    meta = {
        "d": functional.d,
        "N": series.N,
        "M": args.M,
        "window": [window[0], window[1]],
        "mode": args.mode,
    }
    return json.dumps({"meta": meta, "entries": functional.entries_strings()}, indent=2)


def _parse_f(text: str) -> PowerSeries1:
    try:
        coeffs = [Fraction(tok.strip()) for tok in text.split(",") if tok.strip() != ""]
        if not coeffs:
            raise ValueError("empty coefficient list")
        return PowerSeries1(coeffs)
    except (ValueError, ZeroDivisionError) as exc:
        raise CommandError(EXIT_CONFIG, f"cannot parse --f {text!r}: {exc}") from exc


def _load_poly(path: str) -> PolyMap:
    try:
        return PolyMap.from_json_file(path)
    except OSError as exc:
        raise CommandError(EXIT_CONFIG, f"cannot read polynomial map {path!r}: {exc}") from exc
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise CommandError(EXIT_CONFIG, f"invalid polynomial map file {path!r}: {exc}") from exc


def _load_series(path: str, mode: str) -> TimeSeries:
    try:
        return TimeSeries.from_csv(path, mode)
    except OSError as exc:
        raise CommandError(EXIT_DATA, f"cannot read {path!r}: {exc}") from exc
    except ValueError as exc:
        raise CommandError(EXIT_DATA, str(exc)) from exc


def _parse_window(text, n_points: int) -> tuple[int, int]:
    if text is None:
        return (0, n_points - 1)
    parts = text.split(":")
    if len(parts) != 2:
        raise CommandError(EXIT_CONFIG, f"--window must look like n:m, got {text!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise CommandError(EXIT_CONFIG, f"--window must be integer n:m, got {text!r}") from None
    try:
        return check_window((n, m), n_points)
    except ValueError as exc:
        raise CommandError(EXIT_CONFIG, str(exc)) from exc


def _scalar_close(a, b, mode: str) -> bool:
    if mode == "rational":
        return a == b
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def _functionals_close(got, want, mode: str) -> bool:
    keys = set(got.values) | set(want.values)
    return all(_scalar_close(got.value(w), want.value(w), mode) for w in keys)


def _verify_sig(transform, series, poly, f_series, args, window, functional):
    mode = series.mode
    if transform == "iss":
        for w in enumerate_words(series.d, args.M):
            expected = iss_bruteforce(series, window, w)
            if not _scalar_close(functional.value(w), expected, mode):
                raise CommandError(
                    EXIT_VERIFY,
                    f"verification failed at {w!r}: {functional.value(w)} != {expected}",
                )
        return
    if transform == "iss-f":
        reference = iss_generalized_direct(series, f_series.padded(args.M), window, args.M)
    elif transform == "ds-plus":
        from .deformation import hoffman_coefficients

        f_p = hoffman_coefficients("exp", args.p).padded(max(args.M, args.p))
        reference = pi_project(iss_generalized_direct(series, f_p, window, args.M))
    elif transform == "p-inc":
        wide = iss(series, window, args.M * max(1, poly.max_degree))
        for w in enumerate_words(poly.e, args.M):
            expected = wide.pair(phi_P(poly, w))
            if not _scalar_close(functional.value(w), expected, mode):
                raise CommandError(
                    EXIT_VERIFY,
                    f"verification failed at {w!r}: {functional.value(w)} != {expected}",
                )
        return
    else:  # p-series: reindex the window to start at 0, then use the shifted series morphism
        sub = series.window_slice(*window)
        shifted = poly_shift(poly, sub.row(0))
        wide = iss(sub, (0, sub.N - 1), args.M * max(1, poly.max_degree))
        for w in enumerate_words(poly.e, args.M):
            expected = wide.pair(lambda_P(shifted, w))
            if not _scalar_close(functional.value(w), expected, mode):
                raise CommandError(
                    EXIT_VERIFY,
                    f"verification failed at {w!r}: {functional.value(w)} != {expected}",
                )
        return
    if not _functionals_close(functional, reference, mode):
        raise CommandError(EXIT_VERIFY, "verification failed: transform disagrees with its oracle")


# ---------------------------------------------------------------------------
# algebra


_BINARY = {
    "qsh": quasi_shuffle,
    "sh": shuffle,
    "succ": half_shuffle_succ,
    "bul": half_shuffle_bullet,
    "area": area,
}
_DEFORMED = {"qshf": "star", "succf": "succ", "bulf": "bullet", "areaf": "area"}
_SERIES_FUNCS = {"psi", "psiinv"} | set(_DEFORMED)
_POLY_FUNCS = {"phiP", "lambdaP"}


class _ExprParser:
    """Recursive-descent parser for the small algebra expression grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise CommandError(EXIT_CONFIG, f"parse error at position {self.pos}: {message}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")
        return node

    def expr(self):
        self.skip_ws()
        ch = self.peek()
        if ch == "[":
            return ("word", self.word_token())
        if ch.isalpha():
            name = self.identifier()
            self.skip_ws()
            if self.peek() == "(":
                self.pos += 1
                return self.call(name)
            if name == "e":
                return ("word", "e")
            self.fail(f"unknown operand {name!r} (expected a word or an operator call)")
        if not ch:
            self.fail("empty expression")
        self.fail(f"unexpected character {ch!r}")

    def identifier(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos]

    def word_token(self) -> str:
        start = self.pos
        while self.peek() == "[":
            end = self.text.find("]", self.pos)
            if end < 0:
                self.fail("unterminated bracket")
            self.pos = end + 1
        return self.text[start : self.pos]

    def call(self, name: str):
        if name in _BINARY:
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return (name, a, b)
        if name == "dec":
            a = self.expr()
            self.expect(")")
            return ("dec", a)
        if name in ("psi", "psiinv"):
            coeffs = self.coefficient_list()
            self.expect(";")
            a = self.expr()
            self.expect(")")
            return (name, coeffs, a)
        if name in _DEFORMED:
            coeffs = self.coefficient_list()
            self.expect(";")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return (name, coeffs, a, b)
        if name in _POLY_FUNCS:
            path = self.path_token()
            self.expect(";")
            a = self.expr()
            self.expect(")")
            return (name, path, a)
        self.fail(f"unknown operator {name!r}")

    def coefficient_list(self):
        coeffs = []
        while True:
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in ",;)":
                self.pos += 1
            token = self.text[start : self.pos].strip()
            if not token:
                self.fail("expected a rational coefficient")
            try:
                coeffs.append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                self.fail(f"bad rational {token!r}")
            self.skip_ws()
            if self.peek() == ",":
                self.pos += 1
                continue
            return coeffs

    def path_token(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] != ";":
            self.pos += 1
        token = self.text[start : self.pos].strip()
        if not token:
            self.fail("expected a file path before ';'")
        return token


def _to_common_dimension(a: AlgebraElement, b: AlgebraElement):
    da, db = a.dimension(), b.dimension()
    dims_present = [x for x in (da, db) if x is not None]
    if not dims_present:
        return a, b
    target = max(dims_present)
    return promote(a, target), promote(b, target)


def _eval_element(node) -> AlgebraElement:
    value = _eval_node(node)
    if isinstance(value, TensorElement):
        raise CommandError(EXIT_CONFIG, "a dec(...) result cannot be used as an operand")
    return value


def _eval_node(node):
    tag = node[0]
    try:
        if tag == "word":
            return as_element(parse_word(node[1]))
        if tag == "dec":
            return deconcatenate(_eval_element(node[1]))
        if tag in _BINARY:
            a, b = _to_common_dimension(_eval_element(node[1]), _eval_element(node[2]))
            return _BINARY[tag](a, b)
        if tag in ("psi", "psiinv"):
            coeffs, a = node[1], _eval_element(node[2])
            needed = max((len(w) for w in a.terms), default=1)
            f = PowerSeries1(coeffs).padded(max(len(coeffs), needed, 1))
            if tag == "psi":
                return psi(f, a)
            return psi_inverse(f, a)
        if tag in _DEFORMED:
            coeffs = node[1]
            a, b = _to_common_dimension(_eval_element(node[2]), _eval_element(node[3]))
            needed = max(
                (len(u) + len(v) for u in a.terms for v in b.terms), default=1
            )
            f = PowerSeries1(coeffs).padded(max(len(coeffs), needed, 1))
            return deformed_product(f, a, b, _DEFORMED[tag])
        if tag in _POLY_FUNCS:
            poly = _load_poly(node[1])
            operand = promote(_eval_element(node[2]), poly.e)
            return phi_P(poly, operand) if tag == "phiP" else lambda_P(poly, operand)
    except CommandError:
        raise
    except ValueError as exc:
        raise CommandError(EXIT_CONFIG, str(exc)) from exc
    raise CommandError(EXIT_CONFIG, f"unknown expression node {tag!r}")


def _cmd_algebra(args) -> str:
    node = _ExprParser(args.expr).parse()
    value = _eval_node(node)
    if args.d is not None and isinstance(value, AlgebraElement):
        try:
            value = promote(value, args.d)
        except ValueError as exc:
            raise CommandError(EXIT_CONFIG, str(exc)) from exc
    return repr(value)


# ---------------------------------------------------------------------------
# dims


def _cmd_dims(args) -> str:
    if args.d < 1:
        raise CommandError(EXIT_CONFIG, "--d must be >= 1")
    if args.nmax < 0:
        raise CommandError(EXIT_CONFIG, "--nmax must be >= 0")
    table = dims(args.d, args.nmax)
    lines = ["n\tdim_SnA\tdim_Hn"]
    for n in range(args.nmax + 1):
        lines.append(f"{n}\t{comb(args.d + n - 1, n)}\t{table[n]}")
    return "\n".join(lines)
