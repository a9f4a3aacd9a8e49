"""Exact-arithmetic toolkit for Drazin-type inverses in matrix rings.

The package computes Drazin, group, p-Drazin, and g-Drazin inverses of
square matrices over Q, Z, GF(p), and Z/n, verifies every result against
the defining axioms, and mechanically checks product-swap formulas: the
inverse of bd recovered from the inverse of ac under the intertwining
relations bdb = bac and dbd = acd, the accompanying index bound, a
resolvent identity for 1 - bd, and invertibility transfer along rational
scalings. Construction and verification are kept as independent routes so
that one can certify the other.
"""

from .drazin_core import (
    AxiomCheck,
    ClineResult,
    DrazinCertificate,
    Flavor,
    Quadruple,
    cline_classical,
    cline_generalized,
    drazin_inverse,
    group_inverse,
    index_of,
    intertwining_report,
    jacobson_inverse,
    no_group_inverse_reason,
    verify_axioms,
    verify_intertwining,
)
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DivisionByZero,
    DrazinkitError,
    FormulaViolation,
    NoGroupInverse,
    NoSolution,
    NotAField,
    NotInvertible,
    RelationViolation,
    RingMismatch,
    UnsupportedRing,
    ZeroLambda,
    ZeroPolynomial,
)
from .exact_arith import (
    Poly,
    Rational,
    format_rational,
    parse_rational,
    poly_gcd,
    rational_roots,
    squarefree_part,
)
from .fixtures import example_matrices, example_quadruple
from .matrix_rings import (
    RING_Q,
    RING_Z,
    RingSpec,
    SquareMatrix,
    det,
    det_bareiss,
    gf,
    inner_inverse,
    inverse,
    is_invertible,
    is_nilpotent,
    matrix_from_json,
    matrix_to_json,
    rank,
    zmod,
)
from .quadruple_lab import (
    DEFAULT_SEED,
    SearchSpace,
    Strategy,
    brute_force_inverse,
    commutant,
    double_commutant_check,
    enumerate_quadruples,
    is_qnil_by_definition,
    qnil_transfer_check,
    seeded_rational_suite,
    solve_for_d,
)
from .spectral import (
    SpectrumSummary,
    char_poly,
    invertibility_transfer,
    nonzero_spectrum_equal,
    quadruple_spectrum_report,
    scaled_quadruple,
    transfer_lambdas,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomCheck",
    "BudgetExceeded",
    "ClineResult",
    "DEFAULT_SEED",
    "DimensionMismatch",
    "DivisionByZero",
    "DrazinCertificate",
    "DrazinkitError",
    "Flavor",
    "FormulaViolation",
    "NoGroupInverse",
    "NoSolution",
    "NotAField",
    "NotInvertible",
    "Poly",
    "Quadruple",
    "RING_Q",
    "RING_Z",
    "Rational",
    "RelationViolation",
    "RingMismatch",
    "RingSpec",
    "SearchSpace",
    "SpectrumSummary",
    "SquareMatrix",
    "Strategy",
    "UnsupportedRing",
    "ZeroLambda",
    "ZeroPolynomial",
    "brute_force_inverse",
    "char_poly",
    "cline_classical",
    "cline_generalized",
    "commutant",
    "det",
    "det_bareiss",
    "double_commutant_check",
    "drazin_inverse",
    "enumerate_quadruples",
    "example_matrices",
    "example_quadruple",
    "format_rational",
    "gf",
    "group_inverse",
    "index_of",
    "inner_inverse",
    "intertwining_report",
    "inverse",
    "invertibility_transfer",
    "is_invertible",
    "is_nilpotent",
    "is_qnil_by_definition",
    "jacobson_inverse",
    "matrix_from_json",
    "matrix_to_json",
    "no_group_inverse_reason",
    "nonzero_spectrum_equal",
    "parse_rational",
    "poly_gcd",
    "qnil_transfer_check",
    "quadruple_spectrum_report",
    "rank",
    "rational_roots",
    "scaled_quadruple",
    "seeded_rational_suite",
    "solve_for_d",
    "squarefree_part",
    "transfer_lambdas",
    "verify_axioms",
    "verify_intertwining",
    "zmod",
]
