"""Exact integer and rational kernels.

Everything in this module is arbitrary precision: dense integer matrices
with Smith normal form, finitely generated abelian groups in invariant
factor form, the Moebius function, and formal power series truncated at a
fixed order with ``fractions.Fraction`` coefficients.  No floating point
appears on any computation path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    NonPositive,
    NonzeroConstantTerm,
    OrderMismatch,
    ShapeMismatch,
)


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs "
                f"{self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        if not rows:
            return cls(0, 0 if cols is None else cols, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeMismatch("ragged rows")
        if cols is not None and cols != width:
            raise ShapeMismatch(f"rows have {width} columns, expected {cols}")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def mul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = self.entries[i * self.cols:(i + 1) * self.cols]
            for j in range(other.cols):
                out.append(sum(row[k] * other.entry(k, j) for k in range(self.cols)))
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot_row = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
                if pivot_row is None:
                    return 0
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    # Bareiss: this division is exact over the integers.
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.determinant()) == 1


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form U*A*V = D with U, V unimodular and D diagonal."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    def diagonal(self) -> list[int]:
        return [self.D.entry(i, i) for i in range(min(self.D.rows, self.D.cols))]


def smith_normal_form(A: IntegerMatrix) -> SnfResult:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivoting is deterministic: the smallest nonzero absolute entry of the
    remaining submatrix, ties broken lexicographically by position.  The
    resulting diagonal is nonnegative and satisfies d1 | d2 | ... ; it is
    the unique Smith form of A.
    """
    m, n = A.rows, A.cols
    M = A.to_rows()
    U = IntegerMatrix.identity(m).to_rows()
    V = IntegerMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        M[dst] = [x + factor * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + factor * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, factor):
        for row in M:
            row[dst] += factor * row[src]
        for row in V:
            row[dst] += factor * row[src]

    def pivot_position(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    while t < min(m, n):
        pos = pivot_position(t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            pivot = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    add_row(i, t, -(M[i][t] // pivot))
                    if M[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    add_col(j, t, -(M[t][j] // pivot))
                    if M[t][j] != 0:
                        dirty = True
            if dirty:
                # Some remainder survived; it is smaller than the pivot, so
                # re-picking strictly shrinks |pivot| and the loop terminates.
                pos = pivot_position(t)
                i, j = pos
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                 if M[i][j] % pivot != 0),
                None,
            )
            if bad is None:
                break
            # Pull the non-divisible row up; the next reduction pass will
            # produce a strictly smaller pivot, enforcing the divisor chain.
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return SnfResult(
        U=IntegerMatrix.from_rows(U, m),
        D=IntegerMatrix.from_rows(M, n),
        V=IntegerMatrix.from_rows(V, n),
    )


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: Z^free_rank + Z/d1 + ... + Z/dk
    with 2 <= d1 | d2 | ... | dk (invariant factors)."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @classmethod
    def from_cyclic_orders(cls, orders) -> "AbelianGroup":
        """Direct sum of cyclic groups (order 0 meaning Z), recombined into
        invariant factors by merging prime-power columns."""
        rank = 0
        by_prime: dict[int, list[int]] = {}
        for m in orders:
            m = abs(int(m))
            if m == 0:
                rank += 1
            elif m > 1:
                for p, e in _prime_factorization(m).items():
                    by_prime.setdefault(p, []).append(e)
        for exps in by_prime.values():
            exps.sort(reverse=True)
        width = max((len(v) for v in by_prime.values()), default=0)
        factors = []
        for col in range(width):
            d = 1
            for p, exps in by_prime.items():
                if col < len(exps):
                    d *= p ** exps[col]
            factors.append(d)
        factors.reverse()
        return cls(rank, tuple(factors))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


def abelian_group_from_matrix(A: IntegerMatrix, n_generators: int) -> AbelianGroup:
    """Cokernel of A^T: the group Z^n_generators modulo the row space of A."""
    if A.cols != n_generators:
        raise ShapeMismatch(
            f"relation matrix has {A.cols} columns but there are {n_generators} generators"
        )
    diag = smith_normal_form(A).diagonal()
    rank = sum(1 for d in diag if d != 0)
    return AbelianGroup(n_generators - rank, tuple(d for d in diag if d >= 2))


def mobius(n: int) -> int:
    """Moebius function: 0 unless n is squarefree, else (-1)^(#prime factors)."""
    if n < 1:
        raise NonPositive(f"mobius({n}) undefined")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


@dataclass(frozen=True)
class RationalSeries:
    """Formal power series truncated at x**order, exact rational coefficients."""

    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise NonPositive("truncation order must be nonnegative")
        if len(self.coefficients) != self.order + 1:
            raise OrderMismatch(
                f"order {self.order} series needs {self.order + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    @classmethod
    def constant(cls, value, order: int) -> "RationalSeries":
        return cls(order, (Fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def from_coefficients(cls, coeffs, order: int) -> "RationalSeries":
        """Build a series from leading coefficients, zero-padded to order."""
        coeffs = [Fraction(c) for c in coeffs][: order + 1]
        coeffs.extend([Fraction(0)] * (order + 1 - len(coeffs)))
        return cls(order, tuple(coeffs))

    def coefficient(self, n: int) -> Fraction:
        return self.coefficients[n]

    def _check(self, other: "RationalSeries"):
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        self._check(other)
        return RationalSeries(
            self.order, tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        self._check(other)
        return RationalSeries(
            self.order, tuple(a - b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(self.order, tuple(-a for a in self.coefficients))


def binomial_series(m: int, order: int) -> RationalSeries:
    """Expansion of (1-x)^(-m) for m >= 0: coefficient of x^n is C(n+m-1, m-1)."""
    if m < 0:
        raise NonPositive(f"binomial_series exponent must be nonnegative, got {m}")
    if order < 0:
        raise NonPositive("truncation order must be nonnegative")
    if m == 0:
        return RationalSeries.constant(1, order)
    return RationalSeries(
        order, tuple(Fraction(math.comb(n + m - 1, m - 1)) for n in range(order + 1))
    )


def one_minus_x_pow(d: int, order: int) -> RationalSeries:
    """The polynomial (1-x)^d for d >= 0, truncated at the given order."""
    if d < 0:
        raise NonPositive(f"exponent must be nonnegative, got {d}")
    coeffs = [
        Fraction((-1) ** k * math.comb(d, k)) if k <= d else Fraction(0)
        for k in range(order + 1)
    ]
    return RationalSeries(order, tuple(coeffs))


def series_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Truncated Cauchy product."""
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a.coefficients):
        if ca == 0:
            continue
        for j in range(n + 1 - i):
            cb = b.coefficients[j]
            if cb != 0:
                out[i + j] += ca * cb
    return RationalSeries(n, tuple(out))


def series_log1m(u: RationalSeries) -> RationalSeries:
    """log(1-u) = -sum_{k>=1} u^k / k for a series u with zero constant term.

    Since u has valuation >= 1, u^k has valuation >= k and the sum below is
    finite at any truncation order.
    """
    if u.coefficients[0] != 0:
        raise NonzeroConstantTerm("log(1-u) requires u(0) = 0")
    n = u.order
    out = [Fraction(0)] * (n + 1)
    power = u
    for k in range(1, n + 1):
        for idx, c in enumerate(power.coefficients):
            if c != 0:
                out[idx] -= Fraction(c, k)
        if k < n:
            power = series_mul(power, u)
    return RationalSeries(n, tuple(out))
