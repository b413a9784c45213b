"""Quasi-shuffle word algebra and iterated-sums signatures of time series.

The package has five layers:

- ``words``: exact algebra of words over the extended bracket alphabet
  (quasi-shuffle, half-shuffles, shuffle, concatenation, deconcatenation,
  graded dimensions, the text grammar);
- ``functionals``: truncated word series and their convolution product;
- ``deformation``: formal power series without constant term, composition
  sums, the deformation ``psi`` and the deformed products;
- ``signatures``: the numeric layer (signatures of time series, brute-force
  oracles, higher-order discrete signatures, the scalar-series operations);
- ``polymaps``: polynomial maps of the samples and the induced word
  morphisms.

All algebraic identities hold exactly in rational mode; float64 mode exists
for long numeric series.
"""

__version__ = "0.1.0"

from .words import (
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
from .functionals import WordFunctional, convolution
from .deformation import (
    PowerSeries1,
    ZetaMap,
    apply_composition,
    coalgebra_endomorphism,
    deformed_product,
    enumerate_compositions,
    hoffman_coefficients,
    psi,
    psi_inverse,
    series_compose,
    series_inverse,
)
from .signatures import (
    TimeSeries,
    check_window,
    ds_plus,
    iss,
    iss_bruteforce,
    iss_generalized,
    iss_generalized_direct,
    iss_increments,
    phi_extension,
    pi_project,
    sigma_eval,
    ts_quasi_shuffle,
)
from .polymaps import (
    PolyMap,
    apply_polymap,
    iota,
    iss_poly_increments,
    lambda_P,
    p_diamond,
    phi_P,
    poly_eval,
    poly_shift,
    polymap_compose,
)

__all__ = [
    "__version__",
    "EMPTY_WORD",
    "AlgebraElement",
    "Bracket",
    "PolyMap",
    "PowerSeries1",
    "TensorElement",
    "TimeSeries",
    "Word",
    "WordFunctional",
    "ZetaMap",
    "apply_composition",
    "apply_polymap",
    "area",
    "as_element",
    "bracket_product",
    "check_window",
    "coalgebra_endomorphism",
    "concat",
    "concat_product",
    "convolution",
    "deconcatenate",
    "deformed_product",
    "dims",
    "ds_plus",
    "enumerate_brackets",
    "enumerate_compositions",
    "enumerate_words",
    "half_shuffle_bullet",
    "half_shuffle_succ",
    "hoffman_coefficients",
    "iota",
    "iss",
    "iss_bruteforce",
    "iss_generalized",
    "iss_generalized_direct",
    "iss_increments",
    "iss_poly_increments",
    "lambda_P",
    "p_diamond",
    "parse_element",
    "parse_word",
    "phi_P",
    "phi_extension",
    "pi_project",
    "poly_eval",
    "poly_shift",
    "polymap_compose",
    "project_to_brackets",
    "promote",
    "psi",
    "psi_inverse",
    "quasi_shuffle",
    "series_compose",
    "series_inverse",
    "shuffle",
    "sigma_eval",
    "ts_quasi_shuffle",
]
