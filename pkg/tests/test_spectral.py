"""Characteristic polynomials, nonzero-spectrum comparison, unit transfer."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drazinkit.drazin_core import Quadruple, jacobson_inverse
from drazinkit.errors import UnsupportedRing, ZeroLambda
from drazinkit.exact_arith import Poly
from drazinkit.fixtures import example_quadruple, example_quadruple_rational
from drazinkit.matrix_rings import RING_Q, RING_Z, SquareMatrix, det_bareiss, gf
from drazinkit.spectral import (
    DEFAULT_LAMBDAS,
    SpectrumSummary,
    char_poly,
    invertibility_transfer,
    nonzero_spectrum_equal,
    quadruple_spectrum_report,
    scaled_quadruple,
    transfer_lambdas,
)


def m(ring, rows) -> SquareMatrix:
    return SquareMatrix(ring, rows)


def poly(*coeffs) -> Poly:
    return Poly([Fraction(c) for c in coeffs])


def q_matrices(n: int, lo: int = -3, hi: int = 3):
    cell = st.integers(min_value=lo, max_value=hi).map(Fraction)
    return st.lists(
        st.lists(cell, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda rows: SquareMatrix(RING_Q, rows))


nonzero_lambdas = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(
    lambda v: v != 0
)


class TestCharPoly:
    def test_shift_matrix(self):
        assert char_poly(m(RING_Q, [[0, 1], [0, 0]])) == poly(0, 0, 1)

    def test_identity(self):
        eye = SquareMatrix.identity(RING_Q, 2)
        assert char_poly(eye) == poly(1, -2, 1)

    def test_rank_one_idempotent(self):
        assert char_poly(m(RING_Q, [[1, 1], [0, 0]])) == poly(0, -1, 1)

    def test_integer_matrices_lift(self):
        assert char_poly(m(RING_Z, [[0, 2], [0, 0]])) == poly(0, 0, 1)

    def test_finite_rings_rejected(self):
        with pytest.raises(UnsupportedRing):
            char_poly(SquareMatrix.identity(gf(2), 2))

    @given(q_matrices(3), st.fractions(min_value=-3, max_value=3,
                                       max_denominator=2))
    def test_agrees_with_bareiss_determinant(self, a, lam):
        # det(lam I - A) computed by a wholly different elimination route
        shifted = SquareMatrix.identity(RING_Q, 3).scalar_mul(lam) - a
        assert char_poly(a)(lam) == det_bareiss(shifted)

    @given(q_matrices(3), q_matrices(3))
    def test_products_in_both_orders_agree(self, a, b):
        assert char_poly(a * b) == char_poly(b * a)

    @given(q_matrices(4))
    def test_monic_of_degree_n(self, a):
        p = char_poly(a)
        assert p.degree == 4 and p.coeffs[-1] == 1


class TestSpectrumSummary:
    def test_zero_matrix(self):
        s = SpectrumSummary.of(SquareMatrix.zeros(RING_Q, 3))
        assert s.zero_multiplicity == 3
        assert s.nonzero_part == poly(1)

    def test_nonzero_constant_term_invariant(self):
        s = SpectrumSummary.of(m(RING_Q, [[1, 1], [0, 0]]))
        assert s.zero_multiplicity == 1
        assert s.nonzero_part == poly(-1, 1)
        assert s.nonzero_part.coeffs[0] != 0

    def test_serialization_uses_rational_strings(self):
        blob = SpectrumSummary.of(m(RING_Q, [[Fraction(1, 2)]])).to_json()
        assert blob["char_poly"] == ["-1/2", "1"]
        assert blob["zero_multiplicity"] == 0


class TestNonzeroSpectrumEqual:
    def test_different_zero_multiplicities_still_equal(self):
        p = m(RING_Q, [[0, 0, 0], [0, 0, 0], [0, 0, 1]])
        q = m(RING_Q, [[0, 0], [0, 1]])
        report = nonzero_spectrum_equal(p, q)
        assert report.equal

    def test_integer_demo_products_both_nilpotent(self):
        q = example_quadruple_rational("3.6")
        report = nonzero_spectrum_equal(q.ac, q.bd)
        assert report.equal
        assert report.left.nonzero_part == poly(1)

    def test_general_quadruples_may_disagree(self):
        # a valid quadruple whose products have different nonzero spectra:
        # the set-level transfer is strictly weaker than similarity
        q = example_quadruple("2.5")
        report = nonzero_spectrum_equal(q.ac, q.bd)
        assert not report.equal

    def test_multiplicity_flag_is_informational(self):
        p = m(RING_Q, [[1, 0], [0, 1]])
        q = m(RING_Q, [[1]])
        report = nonzero_spectrum_equal(p, q)
        assert report.equal and not report.multiplicity_equal

    @given(q_matrices(3), q_matrices(3))
    def test_products_in_both_orders(self, a, b):
        assert nonzero_spectrum_equal(a * b, b * a).equal


class TestScaledQuadruple:
    def test_zero_lambda_rejected(self):
        with pytest.raises(ZeroLambda):
            scaled_quadruple(example_quadruple("2.5"), Fraction(0))

    def test_integer_ring_rejected(self):
        with pytest.raises(UnsupportedRing):
            scaled_quadruple(example_quadruple("3.6"), Fraction(2))

    @given(nonzero_lambdas)
    def test_relations_preserved(self, lam):
        q = example_quadruple("2.5")
        scaled = scaled_quadruple(q, lam)
        assert scaled.a == q.a.scalar_mul(1 / lam)
        assert scaled.b == q.b and scaled.c == q.c

    @given(st.integers(0, 500), nonzero_lambdas)
    def test_relations_preserved_on_random_quadruples(self, pick, lam):
        from drazinkit.quadruple_lab import seeded_rational_suite

        q = seeded_rational_suite(1, seed=pick)[0]
        scaled_quadruple(q, lam)  # constructor revalidates both relations


class TestInvertibilityTransfer:
    def test_integer_demo_instance_at_lambda_one(self):
        q = example_quadruple_rational("3.6")
        report = invertibility_transfer(q, [Fraction(1)])
        row = report.rows[0]
        assert row.ac_side_invertible and row.bd_side_invertible
        assert row.formula_verified
        # ac = 0, so the resolvent formula collapses to 1 + bd
        eye = SquareMatrix.identity(RING_Q, 2)
        assert jacobson_inverse(q) == eye + q.bd
        assert jacobson_inverse(q) == m(RING_Q, [[1, 2], [0, 1]])

    def test_zero_quadruple_always_invertible(self):
        zero = SquareMatrix.zeros(RING_Q, 2)
        q = Quadruple(zero, zero, zero, zero)
        report = invertibility_transfer(q, DEFAULT_LAMBDAS)
        assert report.all_hold
        for row in report.rows:
            assert row.ac_side_invertible and row.bd_side_invertible

    def test_second_demo_instance_records_singular_side(self):
        q = example_quadruple("2.5")
        report = invertibility_transfer(q, [Fraction(1)])
        row = report.rows[0]
        assert not row.ac_side_invertible
        assert row.bd_side_invertible
        assert row.holds  # implication with false hypothesis

    @given(st.integers(0, 300))
    def test_transfer_on_random_quadruples(self, pick):
        from drazinkit.quadruple_lab import seeded_rational_suite

        q = seeded_rational_suite(1, seed=pick)[0]
        assert invertibility_transfer(q, DEFAULT_LAMBDAS).all_hold


class TestTransferLambdas:
    def test_includes_defaults(self):
        q = example_quadruple("2.5")
        lams = transfer_lambdas(q)
        for lam in DEFAULT_LAMBDAS:
            assert lam in lams

    def test_includes_rational_eigenvalues(self):
        a = m(RING_Q, [[7, 0], [0, 0]])
        eye = SquareMatrix.identity(RING_Q, 2)
        q = Quadruple(a, eye, eye, a)
        assert Fraction(7) in transfer_lambdas(q)

    def test_never_includes_zero(self):
        q = example_quadruple_rational("3.6")
        assert Fraction(0) not in transfer_lambdas(q)


class TestQuadrupleSpectrumReport:
    def test_report_shape_and_literal_invertibility(self):
        report = quadruple_spectrum_report(example_quadruple("2.5"))
        assert set(report) == {
            "ac", "bd", "ac_drazin_invertible", "bd_drazin_invertible",
            "comparison", "transfer",
        }
        # every finite matrix has a Drazin inverse, making the classical
        # Drazin-type spectrum empty; the report pins that down literally
        assert report["ac_drazin_invertible"] is True
        assert report["bd_drazin_invertible"] is True
        assert report["transfer"]["all_hold"] is True
