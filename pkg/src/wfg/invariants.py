"""Computable group invariants of weighted complexes.

Covers the exactly-two classification into a free product of cyclic
groups, realization of any such product by a weighted wedge of edges,
abelianization, weighted graph homology (kernel/cokernel of the weighted
boundary map), and the free ranks of the lower central series quotients
computed from the generating-function formula with exact rational
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .complexes import WeightedComplex
from .errors import (
    ConditionFailed,
    HasTriangles,
    MissingTree,
    NonIntegerRank,
    NonPositive,
    TruncationTooSmall,
    ZeroWeightEdge,
)
from .exact import (
    AbelianGroup,
    IntegerMatrix,
    RationalSeries,
    abelian_group_from_matrix,
    binomial_series,
    mobius,
    one_minus_x_pow,
    series_log1m,
    series_mul,
    smith_normal_form,
)
from .presentation import abelianized_group, present


@dataclass(frozen=True)
class CyclicFactorization:
    """A free product of cyclic groups as the sorted multiset of their
    orders: 0 encodes an infinite cyclic factor, m >= 2 a finite one."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(sorted(int(m) for m in self.orders)))
        for m in self.orders:
            if m < 0 or m == 1:
                raise ValueError(f"cyclic order {m} is not normalized")

    @property
    def free_count(self) -> int:
        return sum(1 for m in self.orders if m == 0)

    def as_abelian(self) -> AbelianGroup:
        return AbelianGroup.from_cyclic_orders(self.orders)

    def __str__(self):
        if not self.orders:
            return "1"
        return " * ".join("Z" if m == 0 else f"Z/{m}" for m in self.orders)


def normalize_factorization(raw: Iterable[int]) -> CyclicFactorization:
    """Take absolute values (Z/w and Z/-w coincide), drop order-1 factors,
    sort ascending with the infinite factors first."""
    return CyclicFactorization(tuple(abs(int(m)) for m in raw if abs(int(m)) != 1))


def satisfies_exactly_two(complex: WeightedComplex) -> bool:
    """For every triangle, exactly two of its three edges lie in the tree.
    Vacuously true for graphs."""
    return _failing_triangle(complex) is None


def _failing_triangle(complex: WeightedComplex):
    if complex.tree is None:
        raise MissingTree("the exactly-two condition is relative to a tree")
    tree = set(complex.tree)
    for a, v, b in complex.triangles:
        in_tree = sum(1 for e in ((a, v), (v, b), (a, b)) if e in tree)
        if in_tree != 2:
            return (a, v, b)
    return None


def _triangle_faces(complex: WeightedComplex) -> set[tuple[int, int]]:
    faces = set()
    for a, v, b in complex.triangles:
        faces.update(((a, v), (v, b), (a, b)))
    return faces


def classify(complex: WeightedComplex) -> CyclicFactorization:
    """Free-product-of-cyclics classification under the exactly-two
    condition: tree edges and non-tree triangle faces contribute |w|,
    remaining edges contribute an infinite factor."""
    bad = _failing_triangle(complex)
    if bad is not None:
        la, lv, lb = (complex.vertices[i] for i in bad)
        raise ConditionFailed(
            f"exactly-two condition fails at triangle ({la},{lv},{lb})",
            triangle=bad,
        )
    tree = set(complex.tree)
    faces = _triangle_faces(complex)
    raw = []
    for a, b, w in complex.edges:
        if (a, b) in tree or (a, b) in faces:
            raw.append(w)
        else:
            raw.append(0)
    return normalize_factorization(raw)


def realize(target: CyclicFactorization) -> WeightedComplex:
    """A weighted wedge of edges whose classification is the target: one
    edge of weight m per factor, all edges in the tree."""
    k = len(target.orders)
    vertices = tuple(f"v{i}" for i in range(k + 1))
    edges = tuple((0, i + 1, m) for i, m in enumerate(target.orders))
    tree = tuple((0, i + 1) for i in range(k))
    return WeightedComplex(vertices, edges, (), tree)


def abelianization(complex: WeightedComplex) -> AbelianGroup:
    """Abelianization of the weighted fundamental group, via the exponent
    sum matrix of the defining presentation."""
    return abelianized_group(present(complex))


@dataclass(frozen=True)
class WeightedHomology:
    h0: AbelianGroup
    h1: AbelianGroup


def weighted_homology_graph(complex: WeightedComplex) -> WeightedHomology:
    """Weighted H1 (kernel) and H0 (cokernel) of the boundary map sending
    edge [a, b] to w(ab)([b] - [a]); vertex weights are fixed at 1.
    Restricted to graphs with nonzero edge weights."""
    if complex.triangles:
        raise HasTriangles("weighted homology is computed for graphs only")
    zero = next((e for e in complex.edges if e[2] == 0), None)
    if zero is not None:
        raise ZeroWeightEdge(f"edge ({zero[0]},{zero[1]}) has weight 0")
    n_v = len(complex.vertices)
    n_e = len(complex.edges)
    rows = [[0] * n_e for _ in range(n_v)]
    for j, (a, b, w) in enumerate(complex.edges):
        rows[b][j] += w
        rows[a][j] -= w
    boundary = IntegerMatrix.from_rows(rows, n_e)
    rank = sum(1 for d in smith_normal_form(boundary).diagonal() if d != 0)
    h1 = AbelianGroup(n_e - rank)
    h0 = abelian_group_from_matrix(boundary.transpose(), n_v)
    return WeightedHomology(h0=h0, h1=h1)


@dataclass(frozen=True)
class LcsRanks:
    """Free ranks R_1..R_order of the successive lower-central-series
    quotients."""

    ranks: tuple[int, ...]
    order: int

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if len(self.ranks) != self.order:
            raise ValueError("rank list length must equal order")

    def r(self, n: int) -> int:
        return self.ranks[n - 1]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _log_generating_series(factors: CyclicFactorization, order: int) -> RationalSeries:
    """log(1 - U(x)) where U is built from the factor counts: with s factors
    of which the j-th contributes d_j in {0, 1} infinite generators,

        U(x) = 1 + (1-x)^(-m_s) * ((s - 1) - sum_j (1-x)^(d_j)).

    U(0) = 0 always, so the logarithm is defined."""
    s = len(factors.orders)
    m_total = factors.free_count
    acc = RationalSeries.constant(s - 1, order)
    for m in factors.orders:
        acc = acc - one_minus_x_pow(1 if m == 0 else 0, order)
    u = RationalSeries.constant(1, order) + series_mul(binomial_series(m_total, order), acc)
    return series_log1m(u)


def lcs_free_ranks(g: CyclicFactorization, max_n: int, order: int = 16) -> LcsRanks:
    """R_1 is the number of infinite factors; for n > 1,

        R_n = (1/n) * sum over divisors k of n with k > 1 of
              mobius(n/k) * k * alpha_k,

    where alpha_k = -(coefficient of x^k in log(1 - U(x))).  Each rank is
    checked to be a nonnegative integer before returning."""
    if max_n < 1:
        raise NonPositive(f"max_n must be >= 1, got {max_n}")
    if order < max_n:
        raise TruncationTooSmall(f"series order {order} < max_n {max_n}")
    log_series = _log_generating_series(g, order)
    alpha = [-c for c in log_series.coefficients]
    ranks = [g.free_count]
    for n in range(2, max_n + 1):
        total = Fraction(0)
        for k in _divisors(n):
            if k > 1:
                total += mobius(n // k) * k * alpha[k]
        value = total / n
        if value.denominator != 1 or value < 0:
            raise NonIntegerRank(f"R_{n} = {value} is not a nonnegative integer")
        ranks.append(int(value))
    return LcsRanks(tuple(ranks), max_n)


def witt_rank(m: int, n: int) -> int:
    """Necklace count (1/n) sum_{d | n} mobius(d) m^(n/d): the free rank of
    the n-th lower-central quotient of a free group of rank m.  Independent
    oracle for lcs_free_ranks on all-free inputs."""
    if n < 1:
        raise NonPositive(f"witt_rank needs n >= 1, got {n}")
    if m < 0:
        raise NonPositive(f"witt_rank needs m >= 0, got {m}")
    if n == 1:
        return m
    total = sum(mobius(d) * m ** (n // d) for d in _divisors(n))
    if total % n != 0:
        raise NonIntegerRank(f"necklace sum {total} not divisible by {n}")
    return total // n
