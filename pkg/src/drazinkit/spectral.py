"""Exact characteristic polynomials and nonzero-spectrum comparison.

Every square matrix is Drazin invertible, so the Drazin-type spectra of
finite matrices are empty and carry no information. The meaningful finite
surrogate is the set of nonzero eigenvalues, compared here without ever
extracting an eigenvalue: both characteristic polynomials are stripped of
their power of lambda and reduced to monic squarefree parts, and the sets
agree iff those polynomials are identical. Pointwise unit transfer at
sampled nonzero lambda complements the set comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .drazin_core import Quadruple, drazin_inverse, jacobson_inverse
from .errors import UnsupportedRing, ZeroLambda
from .exact_arith import Poly, rational_roots, squarefree_part
from .matrix_rings import RING_Q, SquareMatrix, is_invertible, matrix_to_json

DEFAULT_LAMBDAS: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(1, 2),
    Fraction(3),
    Fraction(-3),
    Fraction(5, 7),
)


def _to_rational(a: SquareMatrix) -> SquareMatrix:
    if a.ring.kind == "Q":
        return a
    if a.ring.kind == "Z":
        return SquareMatrix(RING_Q, [list(row) for row in a.entries])
    raise UnsupportedRing(f"characteristic polynomial needs Q or Z, got {a.ring}")


def char_poly(a: SquareMatrix) -> Poly:
    """Monic characteristic polynomial det(lambda I - a) over Q.

    Computed by the Faddeev-LeVerrier trace recurrence, which stays in
    exact rational arithmetic and needs no pivoting.
    """
    aq = _to_rational(a)
    n = aq.n
    coeffs = [Fraction(1)] + [Fraction(0)] * n  # highest degree first
    m = SquareMatrix.identity(RING_Q, n)
    for k in range(1, n + 1):
        bk = aq * m
        ck = -Fraction(bk.trace(), k)
        coeffs[k] = ck
        if k < n:
            m = bk + SquareMatrix.identity(RING_Q, n).scalar_mul(ck)
    return Poly(reversed(coeffs))


@dataclass(frozen=True)
class SpectrumSummary:
    """char_poly factored as lambda^z times a nonzero-rooted part."""

    char: Poly
    zero_multiplicity: int
    nonzero_part: Poly

    @staticmethod
    def of(a: SquareMatrix) -> "SpectrumSummary":
        p = char_poly(a)
        z = 0
        while p.coeffs[z] == 0:
            z += 1
        quotient = Poly(p.coeffs[z:])
        return SpectrumSummary(p, z, squarefree_part(quotient))

    def to_json(self) -> dict[str, object]:
        return {
            "char_poly": self.char.coeff_strings(),
            "zero_multiplicity": self.zero_multiplicity,
            "nonzero_part_squarefree": self.nonzero_part.coeff_strings(),
        }


@dataclass(frozen=True)
class SpectrumComparison:
    equal: bool
    left: SpectrumSummary
    right: SpectrumSummary
    multiplicity_equal: bool

    def to_json(self) -> dict[str, object]:
        return {
            "equal": self.equal,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            # Informational only: whether the nonzero parts agree with
            # multiplicity, which the set-level statement does not promise.
            "multiplicity_equal": self.multiplicity_equal,
            "note": (
                "set-level comparison of nonzero eigenvalues via squarefree "
                "parts of the characteristic polynomials; zero eigenvalues "
                "and multiplicities are reported separately"
            ),
        }


def nonzero_spectrum_equal(p: SquareMatrix, q: SquareMatrix) -> SpectrumComparison:
    """Do p and q have the same set of nonzero eigenvalues, exactly?

    Equality means identical monic squarefree nonzero parts of the two
    characteristic polynomials; dimensions may differ.
    """
    left = SpectrumSummary.of(p)
    right = SpectrumSummary.of(q)
    z_left = Poly(left.char.coeffs[left.zero_multiplicity:])
    z_right = Poly(right.char.coeffs[right.zero_multiplicity:])
    return SpectrumComparison(
        equal=left.nonzero_part == right.nonzero_part,
        left=left,
        right=right,
        multiplicity_equal=z_left.monic() == z_right.monic(),
    )


def scaled_quadruple(q: Quadruple, lam: Fraction) -> Quadruple:
    """(a / lambda, b, c, d / lambda), revalidated by construction.

    Both relations are homogeneous of degree one in (a, d) jointly, so the
    scaling preserves them; the constructor re-checks exactly.
    """
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero")
    if q.ring.kind != "Q":
        raise UnsupportedRing(f"scaling needs Q, got {q.ring}")
    inv = 1 / Fraction(lam)
    return Quadruple(q.a.scalar_mul(inv), q.b, q.c, q.d.scalar_mul(inv))


@dataclass(frozen=True)
class TransferRow:
    lam: Fraction
    ac_side_invertible: bool
    bd_side_invertible: bool
    formula_verified: Optional[bool]

    @property
    def holds(self) -> bool:
        if not self.ac_side_invertible:
            return True
        return self.bd_side_invertible and bool(self.formula_verified)

    def to_json(self) -> dict[str, object]:
        return {
            "lambda": str(self.lam),
            "one_minus_ac_invertible": self.ac_side_invertible,
            "one_minus_bd_invertible": self.bd_side_invertible,
            "formula_verified": self.formula_verified,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class TransferReport:
    rows: tuple[TransferRow, ...]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows)

    def to_json(self) -> dict[str, object]:
        return {"rows": [r.to_json() for r in self.rows], "all_hold": self.all_hold}


def invertibility_transfer(
    q: Quadruple, lambdas: Sequence[Fraction]
) -> TransferReport:
    """Pointwise unit transfer at each sampled nonzero lambda.

    For each lambda the quadruple is rescaled to (a/lambda, b, c, d/lambda);
    whenever 1 - (a/lambda) c is invertible, the explicit formula
    1 + b (1 - (a/lambda) c)^(-1) (d/lambda) must invert 1 - b (d/lambda),
    which is the statement that lambda - bd is a unit whenever lambda - ac
    is. Both side verdicts are recorded even when the hypothesis fails.
    """
    rows: list[TransferRow] = []
    ident = SquareMatrix.identity(q.ring, q.n)
    for lam in lambdas:
        scaled = scaled_quadruple(q, Fraction(lam))
        ac_ok = is_invertible(ident - scaled.ac)
        bd_ok = is_invertible(ident - scaled.bd)
        formula: Optional[bool] = None
        if ac_ok:
            jacobson_inverse(scaled)  # verified two-sided internally
            formula = True
        rows.append(TransferRow(Fraction(lam), ac_ok, bd_ok, formula))
    return TransferReport(tuple(rows))


def transfer_lambdas(q: Quadruple) -> tuple[Fraction, ...]:
    """The fixed deterministic sample list plus every rational eigenvalue
    candidate of ac and bd, which are the points where invertibility can
    actually change."""
    extra: set[Fraction] = set()
    for m in (q.ac, q.bd):
        for root in rational_roots(char_poly(m)):
            if root != 0 and root not in DEFAULT_LAMBDAS:
                extra.add(root)
    return DEFAULT_LAMBDAS + tuple(sorted(extra))


def quadruple_spectrum_report(
    q: Quadruple, lambdas: Optional[Sequence[Fraction]] = None
) -> dict[str, object]:
    """Comparison plus transfer in one JSON-ready report.

    Also certifies that ac and bd are Drazin invertible outright: over a
    field every square matrix is, so the spectrum defined by missing
    Drazin-type inverses is literally empty for both sides. The nonzero
    eigenvalue comparison is the surrogate that still carries content.
    """
    comparison = nonzero_spectrum_equal(q.ac, q.bd)
    if lambdas is None:
        lambdas = transfer_lambdas(q)
    transfer = invertibility_transfer(q, lambdas)
    ac_q = _to_rational(q.ac)
    bd_q = _to_rational(q.bd)
    return {
        "ac": matrix_to_json(q.ac),
        "bd": matrix_to_json(q.bd),
        "ac_drazin_invertible": drazin_inverse(ac_q).valid,
        "bd_drazin_invertible": drazin_inverse(bd_q).valid,
        "comparison": comparison.to_json(),
        "transfer": transfer.to_json(),
    }
