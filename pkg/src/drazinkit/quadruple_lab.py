"""Quadruple generation and finite-ring brute-force oracles.

Tiny matrix spaces (at most 512 elements) are packed into index tables: a
multiplication table over element indices plus per-element caches for
commutants, unit flags, quasinilpotence, and brute-forced inverses. The
exhaustive sweeps and the 10^5-sample residue-ring runs all reduce to table
lookups, while every quadruple that leaves this module is re-validated by
the Quadruple constructor with direct matrix arithmetic, so the tables never
become a single point of trust.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .drazin_core import (
    AxiomCheck,
    DrazinCertificate,
    Flavor,
    Quadruple,
    verify_axioms,
)
from .errors import BudgetExceeded, DrazinkitError, NoSolution
from .matrix_rings import (
    RING_Q,
    RingSpec,
    SquareMatrix,
    _rref,
    all_matrices,
    is_invertible,
    is_nilpotent,
    matrix_to_json,
)

DEFAULT_SEED = 0x5EED

MAX_SPACE_ELEMENTS = 512

# Cap on coefficient tuples examined when enumerating an infinite solution
# coset over Q; keeps solve_for_d total even when the nullspace is large.
_CANDIDATE_CAP = 4096


class PackedSpace:
    """Index tables for one finite matrix space, built once and cached."""

    def __init__(self, ring: RingSpec, n: int):
        assert ring.is_finite and ring.modulus is not None
        count = ring.modulus ** (n * n)
        if count > MAX_SPACE_ELEMENTS:
            raise BudgetExceeded(
                f"{ring} dimension {n} has {count} matrices, over the "
                f"{MAX_SPACE_ELEMENTS}-element enumeration budget"
            )
        self.ring = ring
        self.n = n
        self.elements: list[SquareMatrix] = list(all_matrices(ring, n))
        self.index: dict[SquareMatrix, int] = {
            m: i for i, m in enumerate(self.elements)
        }
        ident = SquareMatrix.identity(ring, n)
        self.identity_idx = self.index[ident]
        self.mul: list[list[int]] = [
            [self.index[a * b] for b in self.elements] for a in self.elements
        ]
        self.one_plus: list[int] = [self.index[ident + e] for e in self.elements]
        self.unit: list[bool] = [is_invertible(e) for e in self.elements]
        self._comm: dict[int, tuple[int, ...]] = {}
        self._qnil: dict[int, bool] = {}
        self._brute: dict[tuple[int, Flavor], tuple[DrazinCertificate, ...]] = {}

    def comm_indices(self, i: int) -> tuple[int, ...]:
        cached = self._comm.get(i)
        if cached is None:
            row = self.mul[i]
            cached = tuple(
                x for x in range(len(self.elements)) if row[x] == self.mul[x][i]
            )
            self._comm[i] = cached
        return cached

    def double_comm(self, i: int, x: int) -> bool:
        mul = self.mul
        row_x = mul[x]
        return all(row_x[y] == mul[y][x] for y in self.comm_indices(i))

    def is_qnil(self, i: int) -> bool:
        cached = self._qnil.get(i)
        if cached is None:
            row = self.mul[i]
            unit = self.unit
            one_plus = self.one_plus
            cached = all(unit[one_plus[row[x]]] for x in self.comm_indices(i))
            self._qnil[i] = cached
        return cached

    def brute(self, i: int, flavor: Flavor) -> tuple[DrazinCertificate, ...]:
        cached = self._brute.get((i, flavor))
        if cached is not None:
            return cached
        mul = self.mul
        a = self.elements[i]
        found: list[DrazinCertificate] = []
        for x in range(len(self.elements)):
            if mul[i][x] != mul[x][i]:
                continue
            if mul[mul[x][i]][x] != x:
                continue
            if not self.double_comm(i, x):
                continue
            cert = verify_axioms(a, self.elements[x], flavor)
            cert = DrazinCertificate(
                cert.element,
                cert.inverse,
                cert.flavor,
                cert.index,
                cert.checks
                + (
                    AxiomCheck(
                        "double-commutant",
                        True,
                        "x commutes with every element of comm(a)",
                    ),
                ),
            )
            if cert.valid:
                found.append(cert)
        result = tuple(found)
        self._brute[(i, flavor)] = result
        return result


_SPACES: dict[tuple[RingSpec, int], PackedSpace] = {}


def get_space(ring: RingSpec, n: int) -> PackedSpace:
    if not ring.is_finite:
        raise DrazinkitError(f"enumeration requires a finite ring, got {ring}")
    key = (ring, n)
    space = _SPACES.get(key)
    if space is None:
        space = PackedSpace(ring, n)
        _SPACES[key] = space
    return space


# -- definitional oracles -------------------------------------------------------


def commutant(a: SquareMatrix) -> list[SquareMatrix]:
    """All x with x a = a x, in enumeration order; finite rings only."""
    space = get_space(a.ring, a.n)
    return [space.elements[x] for x in space.comm_indices(space.index[a])]


def double_commutant_check(a: SquareMatrix, x: SquareMatrix) -> bool:
    """True iff x commutes with every element of comm(a)."""
    a._require_compatible(x)
    space = get_space(a.ring, a.n)
    return space.double_comm(space.index[a], space.index[x])


def is_qnil_by_definition(a: SquareMatrix) -> bool:
    """True iff 1 + a x is a unit for every x in comm(a)."""
    space = get_space(a.ring, a.n)
    return space.is_qnil(space.index[a])


def _is_qnil_any_ring(a: SquareMatrix) -> bool:
    # Fields and Z are handled by nilpotency, which coincides with the
    # definitional property in matrix rings over fields and embeds Z in Q.
    if a.ring.is_finite:
        return is_qnil_by_definition(a)
    return is_nilpotent(a)[0]


def qnil_transfer_check(q: Quadruple) -> dict[str, object]:
    """If ac is quasinilpotent then bd must be; the report carries both
    verdicts, and on a violation the witnessing commuting element."""
    ac_qnil = _is_qnil_any_ring(q.ac)
    bd_qnil = _is_qnil_any_ring(q.bd)
    holds = (not ac_qnil) or bd_qnil
    witness: Optional[dict[str, object]] = None
    if not holds and q.ring.is_finite:
        space = get_space(q.ring, q.n)
        bd_idx = space.index[q.bd]
        for x in space.comm_indices(bd_idx):
            if not space.unit[space.one_plus[space.mul[bd_idx][x]]]:
                witness = matrix_to_json(space.elements[x])
                break
    return {
        "ac_qnil": ac_qnil,
        "bd_qnil": bd_qnil,
        "holds": holds,
        "witness": witness,
    }


def brute_force_inverse(
    a: SquareMatrix, flavor: Flavor = Flavor.DRAZIN
) -> list[DrazinCertificate]:
    """Every x in the matrix space passing all axioms for the flavor.

    The double-commutant condition is checked literally here, element by
    element, unlike the constructive path which relies on uniqueness. For
    the drazin and gdrazin flavors the returned list has length at most one.
    """
    space = get_space(a.ring, a.n)
    return list(space.brute(space.index[a], flavor))


# -- quadruple construction -------------------------------------------------------


def solve_for_d(
    a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, budget: int = 16
) -> list[SquareMatrix]:
    """Solutions d of b d b = b a c and d b d = a c d, given a, b, c.

    The first relation is linear in d and is solved exactly (nullspace plus
    particular solution over fields, full coset enumeration over small
    finite spaces); the second is quadratic and applied as a filter. Up to
    budget solutions are returned in a deterministic order. Raises
    NoSolution when the linear relation is inconsistent.
    """
    a._require_compatible(b)
    a._require_compatible(c)
    if budget < 1:
        raise DrazinkitError("budget must be >= 1")
    ring = a.ring
    if ring.is_finite and ring.modulus ** (a.n * a.n) <= MAX_SPACE_ELEMENTS:
        return _solve_by_enumeration(a, b, c, budget)
    if ring.is_field:
        return _solve_by_elimination(a, b, c, budget)
    raise BudgetExceeded(f"no solve route for {ring} at dimension {a.n}")


def _solve_by_enumeration(
    a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, budget: int
) -> list[SquareMatrix]:
    space = get_space(a.ring, a.n)
    mul = space.mul
    ai, bi, ci = space.index[a], space.index[b], space.index[c]
    target = mul[mul[bi][ai]][ci]
    ac = mul[ai][ci]
    row_b = mul[bi]
    linear = [x for x in range(len(space.elements)) if mul[row_b[x]][bi] == target]
    if not linear:
        raise NoSolution("b X b = b a c has no solution")
    out = []
    for x in linear:
        if mul[mul[x][bi]][x] == mul[ac][x]:
            out.append(space.elements[x])
            if len(out) == budget:
                break
    return out


def _solve_by_elimination(
    a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, budget: int
) -> list[SquareMatrix]:
    ring = a.ring
    n = a.n
    nn = n * n
    bac = b * a * c
    ac = a * c
    # Row (i, j) of the system states (b X b)[i][j] = (b a c)[i][j]; the
    # coefficient of X[k][l] there is b[i][k] * b[l][j].
    aug: list[list] = []
    for i in range(n):
        for j in range(n):
            row = [
                ring.mul(b.entries[i][k], b.entries[l][j])
                for k in range(n)
                for l in range(n)
            ]
            row.append(bac.entries[i][j])
            aug.append(row)
    rows, pivots = _rref(ring, aug)
    if nn in pivots:
        raise NoSolution("b X b = b a c is inconsistent")
    free = [col for col in range(nn) if col not in pivots]
    particular = [ring.zero] * nn
    for r, col in enumerate(pivots):
        particular[col] = rows[r][nn]
    basis = []
    for f in free:
        vec = [ring.zero] * nn
        vec[f] = ring.one
        for r, col in enumerate(pivots):
            vec[col] = ring.neg(rows[r][f])
        basis.append(vec)

    def as_matrix(vec: list) -> SquareMatrix:
        return SquareMatrix(ring, [vec[i * n:(i + 1) * n] for i in range(n)])

    if ring.is_finite:
        alphabet = list(ring.scalars())
    else:
        alphabet = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]
    out: list[SquareMatrix] = []
    seen: set[SquareMatrix] = set()
    examined = 0
    for coeffs in itertools.product(alphabet, repeat=len(basis)):
        examined += 1
        if examined > _CANDIDATE_CAP:
            break
        vec = list(particular)
        for coef, bvec in zip(coeffs, basis):
            if coef != ring.zero:
                for t in range(nn):
                    vec[t] = ring.add(vec[t], ring.mul(coef, bvec[t]))
        x = as_matrix(vec)
        if x in seen:
            continue
        seen.add(x)
        if x * b * x == ac * x:
            out.append(x)
            if len(out) == budget:
                break
    return out


class Strategy(Enum):
    EXHAUSTIVE = "exhaustive"
    LINEAR_SOLVE = "linear-solve"
    CLASSICAL = "classical"
    FIXTURES = "fixtures"


@dataclass(frozen=True)
class SearchSpace:
    """What to enumerate: ring, dimension, strategy, and candidate budget."""

    ring: RingSpec
    n: int
    strategy: Strategy
    budget: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DrazinkitError("dimension must be >= 1")
        if self.budget < 1:
            raise DrazinkitError("budget must be >= 1")
        if self.strategy is Strategy.EXHAUSTIVE and not self.ring.is_finite:
            raise DrazinkitError("exhaustive enumeration requires a finite ring")
        if self.strategy is Strategy.LINEAR_SOLVE and not (
            self.ring.is_field or self.ring.kind == "Zmod"
        ):
            raise DrazinkitError("linear-solve requires a field or a residue ring")


def random_matrix(
    ring: RingSpec, n: int, rng: random.Random, bound: int = 3
) -> SquareMatrix:
    """Uniform small random matrix; entries in [-bound, bound] over Q and Z."""
    if ring.is_finite:
        m = ring.modulus
        assert m is not None
        return SquareMatrix(
            ring, [[rng.randrange(m) for _ in range(n)] for _ in range(n)]
        )
    return SquareMatrix(
        ring, [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    )


def random_invertible_matrix(
    ring: RingSpec, n: int, rng: random.Random, bound: int = 3
) -> SquareMatrix:
    for _ in range(1000):
        m = random_matrix(ring, n, rng, bound)
        if is_invertible(m):
            return m
    raise DrazinkitError("failed to draw an invertible matrix in 1000 tries")


def enumerate_quadruples(
    space: SearchSpace, seed: int = DEFAULT_SEED
) -> Iterator[Quadruple]:
    """Stream of validated quadruples per the space's strategy.

    Exhaustive: every relation-satisfying (a, b, c, d) over the finite ring
    in lexicographic order, pre-screened through the index tables and then
    re-validated by the Quadruple constructor. Linear-solve and classical:
    seeded random sampling, budget counts the samples drawn. Fixtures: the
    two bundled valid demonstration quadruples.
    """
    if space.strategy is Strategy.EXHAUSTIVE:
        ps = get_space(space.ring, space.n)
        m = len(ps.elements)
        total = m**4
        if total > space.budget:
            raise BudgetExceeded(
                f"exhaustive sweep needs {total} candidates, budget is {space.budget}"
            )
        mul = ps.mul
        els = ps.elements
        for ai in range(m):
            row_a = mul[ai]
            for bi in range(m):
                ba = mul[bi][ai]
                row_b = mul[bi]
                for ci in range(m):
                    bac = mul[ba][ci]
                    aci = row_a[ci]
                    row_ac = mul[aci]
                    for di in range(m):
                        bd = row_b[di]
                        if mul[bd][bi] != bac:
                            continue
                        if mul[mul[di][bi]][di] != row_ac[di]:
                            continue
                        yield Quadruple(els[ai], els[bi], els[ci], els[di])
        return
    if space.strategy is Strategy.FIXTURES:
        from .fixtures import example_quadruple

        yield example_quadruple("2.5")
        yield example_quadruple("3.6")
        return
    rng = random.Random(seed)
    if space.strategy is Strategy.CLASSICAL:
        for _ in range(space.budget):
            a = random_matrix(space.ring, space.n, rng)
            b = random_matrix(space.ring, space.n, rng)
            yield Quadruple(a, b, b, a)
        return
    for _ in range(space.budget):
        a = random_matrix(space.ring, space.n, rng)
        b = random_matrix(space.ring, space.n, rng)
        c = random_matrix(space.ring, space.n, rng)
        try:
            ds = solve_for_d(a, b, c, budget=4)
        except NoSolution:
            continue
        for d in ds:
            yield Quadruple(a, b, c, d)


def seeded_rational_suite(
    count: int, seed: int = DEFAULT_SEED, max_dim: int = 4
) -> list[Quadruple]:
    """Deterministic reference suite of quadruples over Q.

    Two families: classical pairs (a, b, b, a), where the products ab and ba
    are the classical intertwined pair, and linear-solve samples with b kept
    invertible, which forces the unique d = a c b^(-1) and makes bd similar
    to ac. Both families therefore have ac and bd with identical nonzero
    eigenvalue sets, so one suite serves the index-bound, unit-transfer, and
    spectrum-comparison properties at once.
    """
    rng = random.Random(seed)
    out: list[Quadruple] = []
    while len(out) < count:
        n = rng.randint(1, max_dim)
        if rng.random() < 0.4:
            a = random_matrix(RING_Q, n, rng)
            b = random_matrix(RING_Q, n, rng)
            out.append(Quadruple(a, b, b, a))
        else:
            a = random_matrix(RING_Q, n, rng)
            c = random_matrix(RING_Q, n, rng)
            b = random_invertible_matrix(RING_Q, n, rng)
            ds = solve_for_d(a, b, c, budget=1)
            out.append(Quadruple(a, b, c, ds[0]))
    return out
