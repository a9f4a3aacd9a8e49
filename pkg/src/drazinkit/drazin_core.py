"""Drazin-family inverses: index, construction, axiom verification, and the
intertwined-product operations.

The four inverse flavors share the commutation and absorption axioms and
differ only in what the core a - a^2 x must satisfy: nilpotent (drazin),
nilpotent with index at most one (group), in the Jacobson radical at some
power (pdrazin), or quasinilpotent (gdrazin). Construction is offered over
fields; over Z and Z/n only verification is available, with brute-force
search providing candidates from the lab module.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

from .errors import (
    DimensionMismatch,
    DrazinkitError,
    FormulaViolation,
    NoGroupInverse,
    NotAField,
    NotInvertible,
    RelationViolation,
    RingMismatch,
)
from .matrix_rings import (
    SquareMatrix,
    _nilpotency_bound,
    in_radical,
    inner_inverse,
    inverse,
    is_nilpotent,
    matrix_from_json,
    matrix_to_json,
    rank,
)


class Flavor(Enum):
    DRAZIN = "drazin"
    PDRAZIN = "pdrazin"
    GDRAZIN = "gdrazin"
    GROUP = "group"


@dataclass(frozen=True)
class AxiomCheck:
    check: str
    passed: bool
    witness: Optional[str] = None

    def to_json(self) -> dict[str, object]:
        return {"check": self.check, "pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class DrazinCertificate:
    """A candidate inverse together with the verified axiom transcript."""

    element: SquareMatrix
    inverse: SquareMatrix
    flavor: Flavor
    index: Optional[int]
    checks: tuple[AxiomCheck, ...]

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict[str, object]:
        return {
            "element": matrix_to_json(self.element),
            "inverse": matrix_to_json(self.inverse),
            "flavor": self.flavor.value,
            "index": self.index,
            "valid": self.valid,
            "transcript": [c.to_json() for c in self.checks],
        }


# -- intertwining relations -----------------------------------------------------


def _relation_entry(
    name: str, left: SquareMatrix, right: SquareMatrix
) -> dict[str, object]:
    diffs = [
        {
            "row": i,
            "col": j,
            "left": left.ring.format_scalar(left.entries[i][j]),
            "right": right.ring.format_scalar(right.entries[i][j]),
        }
        for i in range(left.n)
        for j in range(left.n)
        if left.entries[i][j] != right.entries[i][j]
    ]
    return {
        "relation": name,
        "holds": not diffs,
        "left": matrix_to_json(left),
        "right": matrix_to_json(right),
        "differences": diffs,
    }


def intertwining_report(
    a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, d: SquareMatrix
) -> dict[str, object]:
    """Check bdb = bac and dbd = acd, reporting every differing entry."""
    for other in (b, c, d):
        a._require_compatible(other)
    first = _relation_entry("bdb = bac", b * d * b, b * a * c)
    second = _relation_entry("dbd = acd", d * b * d, a * c * d)
    return {
        "accepted": bool(first["holds"] and second["holds"]),
        "relations": [first, second],
    }


class Quadruple:
    """Four same-ring matrices with the intertwining relations as invariant.

    Construction validates bdb = bac and dbd = acd exactly and rejects the
    input with the full report otherwise, so every Quadruple in circulation
    satisfies the hypotheses of every transfer formula in this module.
    """

    __slots__ = ("a", "b", "c", "d", "ac", "bd")

    def __init__(
        self, a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, d: SquareMatrix
    ):
        report = intertwining_report(a, b, c, d)
        if not report["accepted"]:
            failing = [
                r["relation"] for r in report["relations"] if not r["holds"]  # type: ignore[index]
            ]
            raise RelationViolation(
                f"intertwining relations fail: {', '.join(failing)}", report=report
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "ac", a * c)
        object.__setattr__(self, "bd", b * d)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Quadruple is immutable")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Quadruple)
            and (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        return f"Quadruple(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"

    @property
    def ring(self):
        return self.a.ring

    @property
    def n(self) -> int:
        return self.a.n

    def to_json(self) -> dict[str, object]:
        return {
            "a": matrix_to_json(self.a),
            "b": matrix_to_json(self.b),
            "c": matrix_to_json(self.c),
            "d": matrix_to_json(self.d),
        }

    @staticmethod
    def from_json(obj: object) -> "Quadruple":
        if not isinstance(obj, dict):
            raise DrazinkitError("quadruple JSON must be an object")
        extra = set(obj) - {"a", "b", "c", "d"}
        if extra:
            raise DrazinkitError(f"unknown quadruple fields: {sorted(extra)}")
        missing = {"a", "b", "c", "d"} - set(obj)
        if missing:
            raise DrazinkitError(f"quadruple JSON missing {sorted(missing)}")
        mats = {k: matrix_from_json(obj[k]) for k in ("a", "b", "c", "d")}
        return Quadruple(mats["a"], mats["b"], mats["c"], mats["d"])


def verify_intertwining(
    a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, d: SquareMatrix
) -> Union[Quadruple, dict]:
    """Validated Quadruple, or the rejection report naming what failed.

    The report pinpoints which of the two relations breaks and the exact
    differing entries. Callers that prefer an exception can construct
    Quadruple directly; it raises RelationViolation carrying this report.
    """
    report = intertwining_report(a, b, c, d)
    if not report["accepted"]:
        return report
    return Quadruple(a, b, c, d)


# -- index and axiom verification -------------------------------------------------


def index_of(a: SquareMatrix) -> int:
    """Smallest k >= 0 with rank(a^k) = rank(a^(k+1)); fields only."""
    if not a.ring.is_field:
        raise NotAField(f"index_of requires a field, got {a.ring}")
    r_prev = a.n
    power = a
    for k in range(a.n + 1):
        r_next = rank(power)
        if r_next == r_prev:
            return k
        r_prev = r_next
        power = power * a
    raise FormulaViolation("rank sequence failed to stabilize within n steps")


def _power_identity_index(
    a: SquareMatrix,
    x: SquareMatrix,
    member: Callable[[SquareMatrix], bool],
    bound: int,
) -> Optional[int]:
    """Smallest k in [0, bound] with a^k - a^(k+1) x in the given class."""
    a_k = SquareMatrix.identity(a.ring, a.n)
    for k in range(bound + 1):
        a_k1 = a_k * a
        if member(a_k - a_k1 * x):
            return k
        a_k = a_k1
    return None


def verify_axioms(a: SquareMatrix, x: SquareMatrix, flavor: Flavor) -> DrazinCertificate:
    """Certificate with the full transcript for x as a flavor-inverse of a.

    Failures are recorded in the transcript, never raised. The commuting
    axiom is checked as a x = x a; the literal double-commutant condition is
    enumerable only over finite rings and lives on the brute-force path.
    """
    a._require_compatible(x)
    checks: list[AxiomCheck] = []
    commute = a * x == x * a
    checks.append(
        AxiomCheck("commutes", commute, "a x = x a" if commute else "a x != x a")
    )
    absorb = x * a * x == x
    checks.append(
        AxiomCheck("absorbs", absorb, "x a x = x" if absorb else "x a x != x")
    )
    bound = _nilpotency_bound(a)
    core = a - (a * a) * x
    if flavor is Flavor.PDRAZIN:
        index = _power_identity_index(a, x, in_radical, bound)
        checks.append(
            AxiomCheck(
                "core-radical",
                index is not None,
                f"a^k - a^(k+1) x in radical at k = {index}"
                if index is not None
                else f"a^k - a^(k+1) x outside radical for all k <= {bound}",
            )
        )
        return DrazinCertificate(a, x, flavor, index, tuple(checks))
    index = _power_identity_index(a, x, lambda m: m.is_zero, bound)
    if flavor is Flavor.GDRAZIN and a.ring.is_finite:
        from .quadruple_lab import is_qnil_by_definition

        qnil = is_qnil_by_definition(core)
        checks.append(
            AxiomCheck(
                "core-qnil",
                qnil,
                "a - a^2 x is quasinilpotent (definitional sweep)"
                if qnil
                else "1 + (a - a^2 x) y is a non-unit for some commuting y",
            )
        )
    else:
        nil, degree = is_nilpotent(core)
        name = "core-qnil" if flavor is Flavor.GDRAZIN else "core-nilpotent"
        checks.append(
            AxiomCheck(
                name,
                nil,
                f"(a - a^2 x)^{degree} = 0"
                if nil
                else f"a - a^2 x not nilpotent within bound {bound}",
            )
        )
    if flavor is Flavor.GROUP:
        ok = index is not None and index <= 1
        checks.append(
            AxiomCheck(
                "index-at-most-one",
                ok,
                f"index {index}" if index is not None else "index undefined",
            )
        )
    return DrazinCertificate(a, x, flavor, index, tuple(checks))


# -- construction ------------------------------------------------------------------


def drazin_inverse(a: SquareMatrix) -> DrazinCertificate:
    """Drazin inverse over a field: a^k (a^(2k+1))^- a^k with k = index_of(a).

    Any inner inverse of a^(2k+1) yields the same product; the certificate
    re-verifies every axiom before the result is released.
    """
    if not a.ring.is_field:
        raise NotAField(f"drazin_inverse requires a field, got {a.ring}")
    k = index_of(a)
    a_k = a.power(k)
    x = a_k * inner_inverse(a.power(2 * k + 1)) * a_k
    cert = verify_axioms(a, x, Flavor.DRAZIN)
    if not cert.valid or cert.index != k:
        raise FormulaViolation("constructed drazin inverse failed verification")
    return cert


def group_inverse(
    a: SquareMatrix, candidate: Optional[SquareMatrix] = None
) -> DrazinCertificate:
    """Group inverse: construction over fields, verification anywhere.

    With a candidate supplied the axioms are checked against it directly,
    which works over any ring; a failing candidate raises NoGroupInverse
    naming the failed checks. The construction path raises NoGroupInverse
    when the index exceeds 1.
    """
    if candidate is not None:
        cert = verify_axioms(a, candidate, Flavor.GROUP)
        if not cert.valid:
            failed = [c.check for c in cert.checks if not c.passed]
            raise NoGroupInverse(f"candidate fails: {', '.join(failed)}")
        return cert
    cert = drazin_inverse(a)
    if cert.index is None or cert.index > 1:
        raise NoGroupInverse(f"index {cert.index} exceeds 1")
    regroup = verify_axioms(a, cert.inverse, Flavor.GROUP)
    if not regroup.valid:
        raise FormulaViolation("group re-verification failed after index check")
    return regroup


def no_group_inverse_reason(a: SquareMatrix) -> Optional[str]:
    """A ring-independent proof that a has no group inverse, when one exists.

    A nonzero nilpotent never has a group inverse in any ring: a = a^2 x
    forces a = a^m x^(m-1) = 0. Returns the explanation, or None when this
    criterion does not apply.
    """
    nil, degree = is_nilpotent(a)
    if nil and not a.is_zero:
        return (
            f"nonzero nilpotent (degree {degree}): a = a^2 x would force "
            f"a = a^{degree} x^{degree - 1} = 0"
        )
    return None


# -- intertwined-product operations ------------------------------------------------


@dataclass(frozen=True)
class ClineResult:
    """Outcome of the generalized inverse-product construction."""

    flavor: Flavor
    h_cert: DrazinCertificate
    e_cert: DrazinCertificate
    index_bound_holds: Optional[bool]
    classification: Optional[str]

    def to_json(self) -> dict[str, object]:
        return {
            "flavor": self.flavor.value,
            "ac_certificate": self.h_cert.to_json(),
            "bd_certificate": self.e_cert.to_json(),
            "index_bound_holds": self.index_bound_holds,
            "classification": self.classification,
        }


def _classify(index: Optional[int]) -> str:
    if index == 0:
        return "invertible"
    if index == 1:
        return "group"
    return "index-2"


def cline_generalized(
    q: Quadruple, flavor: Flavor = Flavor.DRAZIN, h: Optional[SquareMatrix] = None
) -> ClineResult:
    """Inverse of bd as b h^2 d, where h is the flavor-inverse of ac.

    Over fields h is constructed; over finite rings a brute-forced h may be
    supplied. The product b h^2 d is verified as the flavor-inverse of bd,
    and the index bound index(bd) <= index(ac) + 1 is asserted whenever both
    indices are defined. With a valid h, any verification failure here is an
    implementation bug, so it raises rather than reporting.
    """
    ac, bd = q.ac, q.bd
    if h is not None:
        h_cert = verify_axioms(ac, h, flavor)
        if not h_cert.valid:
            raise DrazinkitError(
                f"supplied candidate fails the {flavor.value} axioms for ac"
            )
    elif flavor is Flavor.GROUP:
        h_cert = group_inverse(ac)
    else:
        base = drazin_inverse(ac)
        h_cert = verify_axioms(ac, base.inverse, flavor)
        if not h_cert.valid:
            raise FormulaViolation(
                f"constructed inverse fails {flavor.value} re-verification"
            )
    e = q.b * h_cert.inverse * h_cert.inverse * q.d
    e_flavor = Flavor.DRAZIN if flavor is Flavor.GROUP else flavor
    e_cert = verify_axioms(bd, e, e_flavor)
    if not e_cert.valid:
        raise FormulaViolation("b h^2 d failed verification as the inverse of bd")
    bound_ok: Optional[bool] = None
    if h_cert.index is not None and e_cert.index is not None:
        bound_ok = e_cert.index <= h_cert.index + 1
        if not bound_ok:
            raise FormulaViolation(
                f"index bound violated: {e_cert.index} > {h_cert.index} + 1"
            )
    classification = None
    if h_cert.index is not None and h_cert.index <= 1:
        classification = _classify(e_cert.index)
    return ClineResult(flavor, h_cert, e_cert, bound_ok, classification)


def cline_classical(
    a: SquareMatrix, b: SquareMatrix, flavor: Flavor = Flavor.DRAZIN
) -> DrazinCertificate:
    """Inverse of ba as b h^2 a with h the inverse of ab.

    The c = b, d = a specialization of the generalized construction: the
    intertwining relations hold identically there.
    """
    q = Quadruple(a, b, b, a)
    return cline_generalized(q, flavor).e_cert


def jacobson_inverse(q: Quadruple) -> SquareMatrix:
    """(1 - bd)^(-1) as 1 + b (1 - ac)^(-1) d.

    Raises NotInvertible when 1 - ac is singular; the output is verified as
    a two-sided inverse of 1 - bd before it is returned, and a verification
    failure raises FormulaViolation (always an implementation bug).
    """
    ident = SquareMatrix.identity(q.ring, q.n)
    u_inv = inverse(ident - q.ac)
    result = ident + q.b * u_inv * q.d
    v = ident - q.bd
    if v * result != ident or result * v != ident:
        raise FormulaViolation("1 + b (1 - ac)^(-1) d failed to invert 1 - bd")
    return result
