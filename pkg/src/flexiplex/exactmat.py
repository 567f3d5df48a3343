"""Exact rational linear algebra for dense symmetric matrices.

Everything in this module is computed over :class:`fractions.Fraction`;
floating point never enters. Determinants and ranks use fraction-free
(Bareiss) elimination on an integer-scaled copy, and inertia is obtained by
rational congruence diagonalization, so constancy claims downstream can be
asserted with ``==`` instead of tolerances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]


class IndexOutOfRange(IndexError):
    """A row or column selection referenced an index outside the matrix."""


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing to coerce float {value!r} to an exact rational")
    return Fraction(value)


def frac_str(value: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_frac(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class Signature:
    """Inertia of a symmetric matrix: counts of positive, negative and zero
    pivots under congruence (well defined by Sylvester's law)."""

    positive: int
    negative: int
    zero: int

    @property
    def order(self) -> int:
        return self.positive + self.negative + self.zero

    def __iter__(self):
        return iter((self.positive, self.negative, self.zero))


def _tri_size(order: int) -> int:
    return order * (order + 1) // 2


@dataclass(frozen=True)
class SymMatrix:
    """Dense symmetric matrix of exact rationals.

    Only the upper triangle is stored (row-major), so instances are symmetric
    by construction. Immutable: all operations return new matrices.
    """

    order: int
    entries: Vector

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.entries) != _tri_size(self.order):
            raise ValueError(
                f"expected {_tri_size(self.order)} upper-triangle entries, got {len(self.entries)}"
            )

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "SymMatrix":
        n = len(rows)
        data = [[as_fraction(x) for x in row] for row in rows]
        if any(len(row) != n for row in data):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if data[i][j] != data[j][i]:
                    raise ValueError(f"not symmetric at ({i},{j})")
        entries = tuple(data[i][j] for i in range(n) for j in range(i, n))
        return SymMatrix(n, entries)

    @staticmethod
    def from_function(order: int, fn) -> "SymMatrix":
        entries = tuple(
            as_fraction(fn(i, j)) for i in range(order) for j in range(i, order)
        )
        return SymMatrix(order, entries)

    @staticmethod
    def diagonal(values: Sequence) -> "SymMatrix":
        vals = [as_fraction(v) for v in values]
        return SymMatrix.from_function(
            len(vals), lambda i, j: vals[i] if i == j else Fraction(0)
        )

    @staticmethod
    def identity(order: int) -> "SymMatrix":
        return SymMatrix.diagonal([1] * order)

    @staticmethod
    def zeros(order: int) -> "SymMatrix":
        return SymMatrix.from_function(order, lambda i, j: 0)

    # -- access ------------------------------------------------------------

    def _idx(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return i * self.order - i * (i - 1) // 2 + (j - i)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.order and 0 <= j < self.order):
            raise IndexOutOfRange(f"({i},{j}) outside order-{self.order} matrix")
        return self.entries[self._idx(i, j)]

    def rows(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(self.order)] for i in range(self.order)]

    def diagonal_entries(self) -> Vector:
        return tuple(self[i, i] for i in range(self.order))

    def submatrix(self, subset: Sequence[int]) -> "SymMatrix":
        """Principal submatrix on the given (sorted or not) index subset."""
        idx = list(subset)
        for k in idx:
            if not 0 <= k < self.order:
                raise IndexOutOfRange(f"index {k} outside order-{self.order} matrix")
        return SymMatrix.from_function(len(idx), lambda a, b: self[idx[a], idx[b]])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # -- arithmetic ---------------------------------------------------------

    def add(self, other: "SymMatrix") -> "SymMatrix":
        if other.order != self.order:
            raise ValueError("order mismatch")
        return SymMatrix(
            self.order, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, factor) -> "SymMatrix":
        f = as_fraction(factor)
        return SymMatrix(self.order, tuple(f * x for x in self.entries))

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        return self.add(other)

    def matvec(self, v: Sequence) -> Vector:
        vec = [as_fraction(x) for x in v]
        if len(vec) != self.order:
            raise ValueError("dimension mismatch")
        return tuple(
            sum((self[i, j] * vec[j] for j in range(self.order)), Fraction(0))
            for i in range(self.order)
        )

    def congruence(self, s_rows: Sequence[Sequence]) -> "SymMatrix":
        """Return S^T M S for a square transform S given by rows."""
        n = self.order
        s = [[as_fraction(x) for x in row] for row in s_rows]
        if len(s) != n or any(len(r) != n for r in s):
            raise ValueError("transform must match matrix order")
        ms = [
            [sum((self[i, k] * s[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        out = [
            [sum((s[k][i] * ms[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        return SymMatrix.from_rows(out)

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.rows()]


# -- determinants ---------------------------------------------------------


def _det_int_bareiss(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination.

    One-step fraction-free: intermediate entries stay integral, which keeps
    growth polynomial for the small dense matrices used here.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_rows(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a general square rational matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    denoms = [x.denominator for row in rows for x in row]
    scale = math.lcm(*denoms) if denoms else 1
    ints = [[int(x * scale) for x in row] for row in rows]
    return Fraction(_det_int_bareiss(ints), scale**n)


def det(m: SymMatrix) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    return det_rows(m.rows())


def minor(m: SymMatrix, rows: Iterable[int], cols: Iterable[int]) -> Fraction:
    """Determinant of the submatrix on the given row and column index sets."""
    ri = sorted(rows)
    ci = sorted(cols)
    if len(ri) != len(ci):
        raise ValueError("row and column selections must have equal size")
    for k in itertools.chain(ri, ci):
        if not 0 <= k < m.order:
            raise IndexOutOfRange(f"index {k} outside order-{m.order} matrix")
    sub = [[m[i, j] for j in ci] for i in ri]
    return det_rows(sub)


def principal_minors_order2(m: SymMatrix) -> list[tuple[tuple[int, int], Fraction]]:
    """All 2x2 principal minors, as ((i, j), value) with i < j."""
    if m.order < 2:
        raise ValueError("order must be >= 2")
    out = []
    for i in range(m.order):
        for j in range(i + 1, m.order):
            out.append(((i, j), m[i, i] * m[j, j] - m[i, j] ** 2))
    return out


def leading_principal_minors(m: SymMatrix) -> list[Fraction]:
    """Determinants of the leading k x k blocks, k = 1..order."""
    return [det(m.submatrix(range(k))) for k in range(1, m.order + 1)]


# -- rank / kernel ---------------------------------------------------------


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    m = [row[:] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(m: SymMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_echelon(m.rows())[1])


def null_space(m: SymMatrix) -> list[Vector]:
    """Basis of the exact kernel; each vector has a 1 in its free coordinate."""
    rref, pivots = _echelon(m.rows())
    n = m.order
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(tuple(v))
    return basis


# -- inertia ----------------------------------------------------------------


def signature(m: SymMatrix) -> Signature:
    """Exact inertia by rational congruence diagonalization.

    Symmetric pivoting on the trailing block; when the whole trailing diagonal
    vanishes but an off-diagonal entry a = A[i][j] survives, the congruence
    "add row/col j to row/col i" creates the diagonal pivot 2a, which together
    with its Schur complement contributes the (1, 1) split of the standard
    hyperbolic 2x2 block.
    """
    n = m.order
    a = m.rows()
    pos = neg = zero = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                (
                    (i, j)
                    for i in range(k, n)
                    for j in range(i + 1, n)
                    if a[i][j] != 0
                ),
                None,
            )
            if pair is None:
                zero += n - k
                break
            i, j = pair
            for c in range(k, n):
                a[i][c] += a[j][c]
            for r in range(k, n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in range(n):
                a[r][k], a[r][piv] = a[r][piv], a[r][k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        row_k = a[k][:]
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f == 0:
                continue
            for j in range(k + 1, n):
                a[i][j] -= f * row_k[j]
        k += 1
    return Signature(pos, neg, zero)
