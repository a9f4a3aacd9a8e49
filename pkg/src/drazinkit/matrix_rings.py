"""Square matrices over a configurable coefficient ring.

The four coefficient rings are the rationals, the integers, prime fields
GF(p), and residue rings Z/n. Everything is exact: field work uses fraction
or modular elimination, the integer and residue determinants go through the
fraction-free Bareiss scheme, and no operation ever leaves the ring.

Matrices are immutable and hashable, so they can serve as cache keys for
the brute-force layers built on top.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Callable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    DrazinkitError,
    FormulaViolation,
    NotAField,
    NotInvertible,
    RingMismatch,
    UnsupportedRing,
)
from .exact_arith import format_rational, parse_rational

Scalar = Fraction | int

_INT_RE = re.compile(r"^[+-]?\d+$")
_NONNEG_RE = re.compile(r"^\d+$")

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set covers far beyond 2**64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class RingSpec:
    """Descriptor of a coefficient ring.

    kind is one of "Q" (rationals), "Z" (integers), "GF" (prime field),
    "Zmod" (residue ring Z/n); modulus applies to the last two only.
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind in ("Q", "Z"):
            if self.modulus is not None:
                raise DrazinkitError(f"{self.kind} takes no modulus")
        elif self.kind == "GF":
            if self.modulus is None or not _is_prime(self.modulus):
                raise NotAField(f"GF modulus must be prime, got {self.modulus}")
        elif self.kind == "Zmod":
            if self.modulus is None or self.modulus < 2:
                raise DrazinkitError(f"Zmod modulus must be >= 2, got {self.modulus}")
        else:
            raise UnsupportedRing(f"unknown ring kind {self.kind!r}")

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "GF")

    @property
    def is_finite(self) -> bool:
        return self.kind in ("GF", "Zmod")

    @property
    def scalar_count(self) -> int | None:
        return self.modulus if self.is_finite else None

    @cached_property
    def _factorization(self) -> dict[int, int]:
        if self.modulus is None:
            return {}
        return _factorize(self.modulus)

    @property
    def radical_modulus(self) -> int | None:
        """Product of the distinct primes dividing the modulus; Zmod only.

        rad(Z/n) = mZ/n for this m, and rad of the matrix ring consists of
        the matrices with every entry divisible by m.
        """
        if self.kind != "Zmod":
            return None
        m = 1
        for p in self._factorization:
            m *= p
        return m

    @property
    def max_prime_exponent(self) -> int:
        """Largest exponent in the modulus factorization; 1 for fields."""
        if not self._factorization:
            return 1
        return max(self._factorization.values())

    # -- scalar arithmetic ----------------------------------------------------

    def canon(self, x: Scalar) -> Scalar:
        """Reduce a raw scalar to the ring's canonical form."""
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise DrazinkitError(f"{x} is not an element of {self}")
            x = x.numerator
        if self.kind == "Z":
            return int(x)
        assert self.modulus is not None
        return int(x) % self.modulus

    def add(self, x: Scalar, y: Scalar) -> Scalar:
        s = x + y
        return s % self.modulus if self.is_finite else s

    def sub(self, x: Scalar, y: Scalar) -> Scalar:
        s = x - y
        return s % self.modulus if self.is_finite else s

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        s = x * y
        return s % self.modulus if self.is_finite else s

    def neg(self, x: Scalar) -> Scalar:
        return -x % self.modulus if self.is_finite else -x

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.kind == "Q" else 1

    def is_unit_scalar(self, x: Scalar) -> bool:
        if self.kind == "Q":
            return x != 0
        if self.kind == "Z":
            return x in (1, -1)
        if self.kind == "GF":
            return x % self.modulus != 0  # type: ignore[operator]
        return gcd(int(x), self.modulus) == 1  # type: ignore[arg-type]

    def inv_scalar(self, x: Scalar) -> Scalar:
        if not self.is_unit_scalar(x):
            raise NotInvertible(f"{x} is not a unit of {self}", reason="det not a unit")
        if self.kind == "Q":
            return 1 / x
        if self.kind == "Z":
            return x
        return pow(int(x), -1, self.modulus)  # type: ignore[arg-type]

    def scalars(self) -> Iterator[Scalar]:
        """Every scalar of a finite ring, in canonical order."""
        if not self.is_finite:
            raise DrazinkitError(f"{self} is not finite")
        return iter(range(self.modulus))  # type: ignore[arg-type]

    # -- text and JSON forms --------------------------------------------------

    def parse_scalar(self, text: str) -> Scalar:
        if self.kind == "Q":
            return parse_rational(text)
        if self.kind == "Z":
            if not _INT_RE.match(text.strip()):
                raise DrazinkitError(f"not an integer literal: {text!r}")
            return int(text)
        if not _NONNEG_RE.match(text.strip()):
            raise DrazinkitError(f"not a residue literal: {text!r}")
        v = int(text)
        if v >= self.modulus:  # type: ignore[operator]
            raise DrazinkitError(f"residue {v} out of range for {self}")
        return v

    def format_scalar(self, x: Scalar) -> str:
        if self.kind == "Q":
            return format_rational(x)  # type: ignore[arg-type]
        return str(x)

    def to_json(self) -> str | dict[str, int]:
        if self.kind in ("Q", "Z"):
            return self.kind
        assert self.modulus is not None
        return {self.kind: self.modulus}

    @staticmethod
    def from_json(obj: object) -> "RingSpec":
        if obj == "Q":
            return RING_Q
        if obj == "Z":
            return RING_Z
        if isinstance(obj, dict) and len(obj) == 1:
            (kind, modulus), = obj.items()
            if kind in ("GF", "Zmod") and isinstance(modulus, int):
                return RingSpec(kind, modulus)
        raise DrazinkitError(f"not a ring descriptor: {obj!r}")

    def __str__(self) -> str:
        if self.kind in ("Q", "Z"):
            return self.kind
        return f"{self.kind}({self.modulus})"


RING_Q = RingSpec("Q")
RING_Z = RingSpec("Z")


def gf(p: int) -> RingSpec:
    return RingSpec("GF", p)


def zmod(n: int) -> RingSpec:
    return RingSpec("Zmod", n)


class SquareMatrix:
    """Immutable n-by-n matrix over a RingSpec, entries in canonical form."""

    __slots__ = ("ring", "n", "entries")

    def __init__(self, ring: RingSpec, rows: Sequence[Sequence[Scalar]]):
        n = len(rows)
        if n < 1:
            raise DimensionMismatch("matrices must have dimension >= 1")
        canon = ring.canon
        ents = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch(f"expected {n} columns, got {len(row)}")
            ents.append(tuple(canon(x) for x in row))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(ents))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "SquareMatrix":
        one, zero = ring.one, ring.zero
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: RingSpec, n: int) -> "SquareMatrix":
        zero = ring.zero
        return cls(ring, [[zero] * n for _ in range(n)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SquareMatrix)
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.entries))

    def __repr__(self) -> str:
        return f"SquareMatrix({self.ring}, {[list(r) for r in self.entries]})"

    def _require_compatible(self, other: "SquareMatrix") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")

    @property
    def is_zero(self) -> bool:
        zero = self.ring.zero
        return all(x == zero for row in self.entries for x in row)

    def trace(self) -> Scalar:
        acc = self.ring.zero
        for i in range(self.n):
            acc = self.ring.add(acc, self.entries[i][i])
        return acc

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._require_compatible(other)
        add = self.ring.add
        return SquareMatrix(
            self.ring,
            [
                [add(x, y) for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._require_compatible(other)
        sub = self.ring.sub
        return SquareMatrix(
            self.ring,
            [
                [sub(x, y) for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self) -> "SquareMatrix":
        neg = self.ring.neg
        return SquareMatrix(self.ring, [[neg(x) for x in row] for row in self.entries])

    def __mul__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._require_compatible(other)
        n = self.n
        a = self.entries
        b = other.entries
        cols = [tuple(b[k][j] for k in range(n)) for j in range(n)]
        finite = self.ring.is_finite
        m = self.ring.modulus
        out = []
        for i in range(n):
            ai = a[i]
            row = []
            for j in range(n):
                cj = cols[j]
                s = sum(ai[k] * cj[k] for k in range(n))
                row.append(s % m if finite else s)
            out.append(row)
        return SquareMatrix(self.ring, out)

    def scalar_mul(self, c: Scalar) -> "SquareMatrix":
        c = self.ring.canon(c)
        mul = self.ring.mul
        return SquareMatrix(self.ring, [[mul(c, x) for x in row] for row in self.entries])

    def power(self, k: int) -> "SquareMatrix":
        if k < 0:
            raise DrazinkitError("power exponent must be >= 0")
        result = SquareMatrix.identity(self.ring, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result


# -- field elimination --------------------------------------------------------


def _require_field(a: SquareMatrix) -> None:
    if not a.ring.is_field:
        raise NotAField(f"operation requires a field, got {a.ring}")


def _rref(
    ring: RingSpec, rows: list[list[Scalar]]
) -> tuple[list[list[Scalar]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if rows[i][c] != ring.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ring.inv_scalar(rows[r][c])
        rows[r] = [ring.mul(inv, x) for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != ring.zero:
                f = rows[i][c]
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(a: SquareMatrix) -> int:
    """Row rank by exact elimination; fields only."""
    _require_field(a)
    rows = [list(r) for r in a.entries]
    _, pivots = _rref(a.ring, rows)
    return len(pivots)


def inverse(a: SquareMatrix) -> SquareMatrix:
    """Two-sided inverse, or NotInvertible explaining why none exists.

    Fields invert by elimination; Z/n and Z go through the adjugate, whose
    entries stay in the ring, scaled by the inverse of the determinant.
    """
    ring = a.ring
    n = a.n
    if ring.is_field:
        aug = [list(r) + [ring.one if i == j else ring.zero for j in range(n)]
               for i, r in enumerate(a.entries)]
        rows, pivots = _rref(ring, aug)
        if pivots != list(range(n)):
            raise NotInvertible(
                f"rank {len([p for p in pivots if p < n])} < {n}",
                reason="rank deficiency",
            )
        return SquareMatrix(ring, [row[n:] for row in rows])
    d = det(a)
    if not ring.is_unit_scalar(d):
        raise NotInvertible(f"det {d} is not a unit of {ring}", reason="det not a unit")
    d_inv = ring.inv_scalar(d)
    adj = _adjugate(a)
    result = adj.scalar_mul(d_inv)
    check = a * result
    if check != SquareMatrix.identity(ring, n):
        raise FormulaViolation("adjugate inverse failed verification")
    return result


def _adjugate(a: SquareMatrix) -> SquareMatrix:
    ring = a.ring
    n = a.n
    if n == 1:
        return SquareMatrix.identity(ring, 1)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [a.entries[r][c] for c in range(n) if c != i]
                for r in range(n) if r != j
            ]
            cof = det(SquareMatrix(ring, minor))
            if (i + j) % 2 == 1:
                cof = ring.neg(cof)
            row.append(cof)
        out.append(row)
    return SquareMatrix(ring, out)


def is_invertible(a: SquareMatrix) -> bool:
    ring = a.ring
    if ring.kind == "Q":
        return det(a) != 0
    return ring.is_unit_scalar(det(a))


def _bareiss(rows: list[list[Scalar]], div: Callable[[Scalar, Scalar], Scalar]) -> Scalar:
    """Fraction-free determinant; div must be exact division in the domain."""
    n = len(rows)
    sign = 1
    prev: Scalar = 1
    m = [list(r) for r in rows]
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    swap = i
                    break
            if swap is None:
                return 0 * prev
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def det(a: SquareMatrix) -> Scalar:
    """Exact determinant for every supported ring.

    Fields eliminate with division; the integers run Bareiss directly; Z/n
    lifts to integer representatives, runs Bareiss over Z, and reduces. The
    lift is exact because reduction mod n is a ring homomorphism.
    """
    ring = a.ring
    n = a.n
    if ring.kind == "Q":
        rows = [list(r) for r in a.entries]
        d = Fraction(1)
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if rows[i][c] != 0:
                    pivot = i
                    break
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                d = -d
            d *= rows[c][c]
            inv = 1 / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c] != 0:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return d
    if ring.kind == "GF":
        p = ring.modulus
        rows = [list(r) for r in a.entries]
        d = 1
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if rows[i][c] % p != 0:
                    pivot = i
                    break
            if pivot is None:
                return 0
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                d = -d
            d = d * rows[c][c] % p
            inv = pow(rows[c][c], -1, p)
            for i in range(c + 1, n):
                if rows[i][c] % p != 0:
                    f = rows[i][c] * inv % p
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
        return d % p
    lifted = [[int(x) for x in row] for row in a.entries]
    d = _bareiss(lifted, lambda x, y: x // y)
    return d if ring.kind == "Z" else d % ring.modulus  # type: ignore[operator]


def det_bareiss(a: SquareMatrix) -> Scalar:
    """Independent determinant route, used to cross-check det().

    Runs the Bareiss recurrence in the fraction field for Q, directly over
    Z, and on integer lifts for the modular rings.
    """
    ring = a.ring
    if ring.kind == "Q":
        rows = [[Fraction(x) for x in row] for row in a.entries]
        return _bareiss(rows, lambda x, y: x / y)
    lifted = [[int(x) for x in row] for row in a.entries]
    d = _bareiss(lifted, lambda x, y: x // y)
    return d if ring.kind == "Z" else d % ring.modulus  # type: ignore[operator]


def inner_inverse(a: SquareMatrix) -> SquareMatrix:
    """Some X with A X A = A, via the rank normal form.

    Full elimination finds invertible P, Q with P A Q = [[I_r, 0], [0, 0]];
    X = Q [[I_r, 0], [0, 0]] P then satisfies the identity over any field.
    """
    _require_field(a)
    ring = a.ring
    n = a.n
    # Row stage: track P with the same operations, starting from identity.
    work = [list(r) for r in a.entries]
    p_rows = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    r = 0
    pivots: list[int] = []
    for c in range(n):
        pivot_row = None
        for i in range(r, n):
            if work[i][c] != ring.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p_rows[r], p_rows[pivot_row] = p_rows[pivot_row], p_rows[r]
        inv = ring.inv_scalar(work[r][c])
        work[r] = [ring.mul(inv, x) for x in work[r]]
        p_rows[r] = [ring.mul(inv, x) for x in p_rows[r]]
        for i in range(n):
            if i != r and work[i][c] != ring.zero:
                f = work[i][c]
                work[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(work[i], work[r])]
                p_rows[i] = [
                    ring.sub(x, ring.mul(f, y)) for x, y in zip(p_rows[i], p_rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == n:
            break
    # Column stage: clear non-pivot columns, then move pivots to the front.
    q_rows = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    for idx, c in enumerate(pivots):
        for j in range(n):
            if j != c and work[idx][j] != ring.zero:
                f = work[idx][j]
                for t in range(n):
                    work[t][j] = ring.sub(work[t][j], ring.mul(f, work[t][c]))
                    q_rows[t][j] = ring.sub(q_rows[t][j], ring.mul(f, q_rows[t][c]))
    order = pivots + [c for c in range(n) if c not in pivots]
    work = [[row[c] for c in order] for row in work]
    q_rows = [[row[c] for c in order] for row in q_rows]
    p_mat = SquareMatrix(ring, p_rows)
    q_mat = SquareMatrix(ring, q_rows)
    rk = len(pivots)
    e_mat = SquareMatrix(
        ring,
        [[ring.one if (i == j and i < rk) else ring.zero for j in range(n)]
         for i in range(n)],
    )
    x = q_mat * e_mat * p_mat
    if a * x * a != a:
        raise FormulaViolation("rank-normal-form inner inverse failed A X A = A")
    return x


def _nilpotency_bound(a: SquareMatrix) -> int:
    # Over a field or Z the degree of a nilpotent n x n matrix is at most n.
    # Over Z/n reduce mod each prime power p^e: the matrix is nilpotent mod p,
    # so its n-th power is divisible by p, and the (n*e)-th by p^e.
    if a.ring.kind == "Zmod":
        return a.n * a.ring.max_prime_exponent
    return a.n


def is_nilpotent(a: SquareMatrix) -> tuple[bool, int | None]:
    """(True, degree) when some power vanishes, else (False, None)."""
    bound = _nilpotency_bound(a)
    b = a
    for k in range(1, bound + 1):
        if b.is_zero:
            return True, k
        if k < bound:
            b = b * a
    return False, None


def in_radical(a: SquareMatrix) -> bool:
    """Membership in the Jacobson radical of the matrix ring.

    For Z/n that radical is the matrices with all entries divisible by the
    product m of the distinct primes of n; over Q, GF(p), and Z it is zero.
    """
    if a.ring.kind == "Zmod":
        m = a.ring.radical_modulus
        return all(x % m == 0 for row in a.entries for x in row)
    return a.is_zero


def all_matrices(ring: RingSpec, n: int) -> Iterator[SquareMatrix]:
    """Every n x n matrix over a finite ring, row-major lexicographic."""
    if not ring.is_finite:
        raise DrazinkitError(f"cannot enumerate matrices over {ring}")
    m = ring.modulus
    assert m is not None
    total = n * n

    def build(flat_index: int) -> SquareMatrix:
        digits = []
        v = flat_index
        for _ in range(total):
            digits.append(v % m)
            v //= m
        digits.reverse()
        rows = [digits[i * n:(i + 1) * n] for i in range(n)]
        return SquareMatrix(ring, rows)

    for idx in range(m**total):
        yield build(idx)


# -- JSON ----------------------------------------------------------------------


def matrix_to_json(a: SquareMatrix) -> dict[str, object]:
    fmt = a.ring.format_scalar
    return {
        "ring": a.ring.to_json(),
        "rows": [[fmt(x) for x in row] for row in a.entries],
    }


def matrix_from_json(obj: object) -> SquareMatrix:
    if not isinstance(obj, dict):
        raise DrazinkitError(f"matrix JSON must be an object, got {type(obj).__name__}")
    extra = set(obj) - {"ring", "rows"}
    if extra:
        raise DrazinkitError(f"unknown matrix fields: {sorted(extra)}")
    if "ring" not in obj or "rows" not in obj:
        raise DrazinkitError("matrix JSON requires 'ring' and 'rows'")
    ring = RingSpec.from_json(obj["ring"])
    rows = obj["rows"]
    if not isinstance(rows, list) or not rows:
        raise DrazinkitError("'rows' must be a non-empty list")
    n = len(rows)
    parsed: list[list[Scalar]] = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise DrazinkitError(f"rows must all have length {n}")
        out_row = []
        for cell in row:
            if not isinstance(cell, str):
                raise DrazinkitError(f"matrix entries must be strings, got {cell!r}")
            out_row.append(ring.parse_scalar(cell))
        parsed.append(out_row)
    return SquareMatrix(ring, parsed)
