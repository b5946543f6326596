"""Exact rational linear algebra for elementary transformations.

An elementary transformation onto ``d`` points is a ``d x n`` matrix whose
rows ``phi_i`` are its components at the points.  The differentials of the
curve only enter through a ``g x d`` matrix of evaluations ``omega[i][j]``,
which is treated here as an arbitrary rational matrix.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised on shape mismatches between matrices."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


class RationalMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_frac(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError(f"ragged matrix: expected {cols} columns, got {len(r)}")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def take_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([self._data[i] for i in idx], self.cols)

    def take_cols(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[r[j] for j in idx] for r in self._data], len(idx))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._data), self.rows) if self.rows else RationalMatrix([], 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and (self.rows, self.cols, self._data) == (
            other.rows, other.cols, other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.  ``rows`` is modified in place."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.tolist())[1])


def determinant(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise DimensionError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    a = m.tolist()
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def row_space_key(vectors: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical key of the span of ``vectors``: its nonzero RREF rows."""
    if not vectors:
        return ()
    reduced, _ = _rref([list(map(_frac, v)) for v in vectors])
    return tuple(tuple(r) for r in reduced)


def in_span(key: tuple[tuple[Fraction, ...], ...], v: Sequence[Fraction]) -> bool:
    """Membership of ``v`` in the span whose RREF rows are ``key``."""
    w = list(map(_frac, v))
    for row in key:
        c = next(i for i, x in enumerate(row) if x != 0)
        if w[c] != 0:
            f = w[c]
            w = [a - f * b for a, b in zip(w, row)]
    return not any(w)


# -- Condition B ------------------------------------------------------------

@dataclass(frozen=True)
class ConditionB:
    holds: bool
    violating_rows: tuple[int, ...] | None = None
    zero_rows: tuple[int, ...] = ()

    @property
    def surjective(self) -> bool:
        return not self.zero_rows


def condition_b(phi: RationalMatrix) -> ConditionB:
    """Every ``n`` rows of the ``d x n`` matrix ``phi`` are linearly independent.

    Row indices in the result are 0-based.  A zero row means ``phi`` is not
    surjective and fails the condition on its own.
    """
    d, n = phi.rows, phi.cols
    if d < n:
        raise DimensionError(f"need at least n={n} rows, got {d}")
    zero = tuple(i for i in range(d) if not any(phi.row(i)))
    if zero:
        others = [i for i in range(d) if i != zero[0]][: n - 1]
        return ConditionB(False, tuple(sorted([zero[0], *others])), zero)
    for idx in itertools.combinations(range(d), n):
        if determinant(phi.take_rows(idx)) == 0:
            return ConditionB(False, idx, zero)
    return ConditionB(True, None, zero)


# -- Condition A ------------------------------------------------------------

@dataclass(frozen=True)
class OmegaMatrix:
    """A ``g x d`` matrix standing for the values ``omega_i(p_j)``."""

    entries: RationalMatrix

    @property
    def g(self) -> int:
        return self.entries.rows

    @property
    def d(self) -> int:
        return self.entries.cols

    @property
    def n(self) -> int:
        if self.g == 0 or self.d % self.g:
            raise DimensionError(f"degree {self.d} is not a multiple of genus {self.g}")
        return self.d // self.g

    def block(self, s: int) -> RationalMatrix:
        """The ``g x g`` minor on columns ``s*g .. s*g + g - 1``."""
        return self.entries.take_cols(range(s * self.g, (s + 1) * self.g))

    def block_minors(self) -> list[Fraction]:
        return [determinant(self.block(s)) for s in range(self.n)]

    @property
    def generic(self) -> bool:
        """Every consecutive ``g x g`` column block is nonsingular."""
        return all(m != 0 for m in self.block_minors())


def _as_omega(omega) -> OmegaMatrix:
    if isinstance(omega, OmegaMatrix):
        return omega
    if not isinstance(omega, RationalMatrix):
        omega = RationalMatrix(omega)
    return OmegaMatrix(omega)


def condition_a_matrix(omega, phi: RationalMatrix) -> RationalMatrix:
    """The ``d x d`` matrix of the induced map on global sections.

    Row ``s*g + i`` and column ``j`` hold ``phi[j][s] * omega[i][j]``.
    """
    omega = _as_omega(omega)
    g, d = omega.g, omega.d
    n = phi.cols
    if phi.rows != d or d != n * g:
        raise DimensionError(
            f"need phi of shape d x n with d = n*g; got omega {g}x{d}, phi {phi.rows}x{n}"
        )
    w = omega.entries
    return RationalMatrix(
        [[phi[j, s] * w[i, j] for j in range(d)] for s in range(n) for i in range(g)], d
    )


def condition_a(omega, phi: RationalMatrix) -> bool:
    return determinant(condition_a_matrix(omega, phi)) != 0


def block_indicator(g: int, n: int) -> RationalMatrix:
    """``d x n`` matrix with ``b[j][s] = 1`` exactly when column ``j`` lies in block ``s``."""
    return RationalMatrix([[int(j // g == s) for s in range(n)] for j in range(n * g)], n)


@dataclass(frozen=True)
class CoefficientIdentity:
    coefficient: Fraction
    minor_product: Fraction

    @property
    def equal(self) -> bool:
        return self.coefficient == self.minor_product


def coefficient_identity(omega) -> CoefficientIdentity:
    """Compare the block-diagonal monomial coefficient with the product of block minors.

    The determinant is linear in each column, and column ``j`` only involves the
    variables ``b[j][*]``, so the coefficient of ``prod_j b[j][block(j)]`` is
    the determinant evaluated at the indicator assignment.
    """
    omega = _as_omega(omega)
    g, n = omega.g, omega.n
    coeff = determinant(condition_a_matrix(omega, block_indicator(g, n)))
    prod = Fraction(1)
    for m in omega.block_minors():
        prod *= m
    return CoefficientIdentity(coeff, prod)


# -- GIT stability ----------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveConfig:
    """Points of ``P^ambient_dim`` given by homogeneous coordinate vectors."""

    ambient_dim: int
    points: tuple[tuple[Fraction, ...], ...]

    def __init__(self, ambient_dim: int, points: Iterable[Iterable]):
        pts = tuple(tuple(_frac(x) for x in p) for p in points)
        for i, p in enumerate(pts):
            if len(p) != ambient_dim + 1:
                raise DimensionError(
                    f"point {i} has {len(p)} coordinates, expected {ambient_dim + 1}"
                )
            if not any(p):
                raise ValueError(f"point {i} is the zero vector")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class Stability:
    stable: bool
    violating_subspace: tuple[int, ...] | None = None
    count: int | None = None
    subspace_dim: int | None = None


def git_stable(config: ProjectiveConfig) -> Stability:
    """Check, for every proper linear subspace spanned by configuration points,

        #(points in L) / (m + 1)  <  (dim L + 1) / (n + 1).

    Only spans of point subsets need testing: shrinking ``L`` to the span of the
    points it contains keeps the count and lowers the right-hand side.
    On failure the returned indices are the points lying in the offending span.
    """
    pts = config.points
    total = len(pts)
    if total == 0:
        raise ValueError("configuration has no points")
    n = config.ambient_dim
    seen: set = set()
    for size in range(1, min(n, total) + 1):
        for idx in itertools.combinations(range(total), size):
            key = row_space_key([pts[i] for i in idx])
            r = len(key)
            if r > n or key in seen:
                continue
            seen.add(key)
            inside = tuple(i for i in range(total) if in_span(key, pts[i]))
            if len(inside) * (n + 1) >= r * total:
                return Stability(False, inside, len(inside), r - 1)
    return Stability(True)


def all_subsets_independent(config: ProjectiveConfig) -> bool:
    """Every ``n+1`` points (or all of them, if fewer) are linearly independent."""
    pts = config.points
    k = min(config.ambient_dim + 1, len(pts))
    return all(
        rank(RationalMatrix([pts[i] for i in idx])) == k
        for idx in itertools.combinations(range(len(pts)), k)
    )


# -- genericity experiments -------------------------------------------------

@dataclass(frozen=True)
class GenericityRates:
    trials: int
    condition_a_rate: Fraction | None
    condition_b_rate: Fraction
    omega_generic: bool
    failures_a: tuple[RationalMatrix, ...] = ()
    failures_b: tuple[RationalMatrix, ...] = ()

    @property
    def empty(self) -> bool:
        return self.trials == 0


def condition_rates(omega, matrices: Iterable[RationalMatrix]) -> GenericityRates:
    """Fractions of ``matrices`` satisfying Conditions A and B.

    The Condition A rate is ``None`` when ``omega`` has a singular consecutive
    block, since genericity of Condition A is only claimed for generic omega.
    """
    omega = _as_omega(omega)
    generic = omega.generic
    total = pass_a = pass_b = 0
    fail_a, fail_b = [], []
    for phi in matrices:
        total += 1
        if condition_b(phi).holds:
            pass_b += 1
        else:
            fail_b.append(phi)
        if generic:
            if condition_a(omega, phi):
                pass_a += 1
            else:
                fail_a.append(phi)
    if total == 0:
        return GenericityRates(0, Fraction(1) if generic else None, Fraction(1), generic)
    return GenericityRates(
        total,
        Fraction(pass_a, total) if generic else None,
        Fraction(pass_b, total),
        generic,
        tuple(fail_a),
        tuple(fail_b),
    )


def random_transformation(d: int, n: int, seed: int, index: int, bound: int) -> RationalMatrix:
    """Trial ``index`` of the seeded stream: integer entries uniform in ``[-bound, bound]``."""
    rng = random.Random(f"{seed}:{index}")
    return RationalMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(d)], n)


def sample_generic_transformation(
    omega, seed: int, trials: int, bound: int = 10**6
) -> GenericityRates:
    omega = _as_omega(omega)
    d, n = omega.d, omega.n
    return condition_rates(
        omega, (random_transformation(d, n, seed, t, bound) for t in range(trials))
    )


def exhaustive_transformations(d: int, n: int, grid: Sequence) -> Iterable[RationalMatrix]:
    """Every ``d x n`` matrix with entries drawn from ``grid``."""
    for flat in itertools.product(grid, repeat=d * n):
        yield RationalMatrix([flat[i * n:(i + 1) * n] for i in range(d)], n)
