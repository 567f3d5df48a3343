"""Kernel tests: determinants, minors, rank, inertia, kernels.

The independent oracle here is naive cofactor expansion (`naive_det`), kept
deliberately separate from the Bareiss path it checks.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flexiplex.exactmat import (
    IndexOutOfRange,
    Signature,
    SymMatrix,
    det,
    det_rows,
    frac_str,
    minor,
    null_space,
    parse_frac,
    principal_minors_order2,
    rank,
    signature,
)


def naive_det(rows):
    """Cofactor-expansion determinant; the independent oracle."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        sub = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        total += (-1) ** j * rows[0][j] * naive_det(sub)
    return total


def outer_pair_matrix(x, y):
    """Rank-1 symmetric [[x^2, xy], [xy, y^2]]."""
    x, y = Fraction(x), Fraction(y)
    return SymMatrix.from_rows([[x * x, x * y], [x * y, y * y]])


def n4_gram_pair(a, b):
    """The two 4x4 rank-deficient Gram blocks built from zero-sum triples
    a = (a1,a2,a3) on vertices 1..3 and b = (b2,b3,b4) on vertices 2..4."""
    a1, a2, a3 = map(Fraction, a)
    b2, b3, b4 = map(Fraction, b)
    A = SymMatrix.from_rows(
        [
            [a1 * a1, -a1 * a2, -a1 * a3, 0],
            [-a1 * a2, a2 * a2, -a2 * a3, 0],
            [-a1 * a3, -a2 * a3, a3 * a3, 0],
            [0, 0, 0, 0],
        ]
    )
    B = SymMatrix.from_rows(
        [
            [0, 0, 0, 0],
            [0, b2 * b2, -b2 * b3, -b2 * b4],
            [0, -b2 * b3, b3 * b3, -b3 * b4],
            [0, -b2 * b4, -b3 * b4, b4 * b4],
        ]
    )
    return A, B


frac_entries = st.fractions(
    min_value=-6, max_value=6, max_denominator=4
)


def sym_matrices(max_order=5):
    def build(draw_result):
        order, values = draw_result
        it = iter(values)
        return SymMatrix.from_function(order, lambda i, j: next(it))

    return st.integers(min_value=1, max_value=max_order).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                frac_entries, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2
            ),
        )
    ).map(build)


class TestDet:
    def test_det_1x1(self):
        assert det(SymMatrix.from_rows([[5]])) == 5

    def test_det_diag(self):
        assert det(SymMatrix.diagonal([1, -1])) == -1

    def test_det_n4_family_at_t1(self):
        # frozen: closed form -4*a1^2*b4^2*(a2*a3*t + b2*b3/t)^2 at t=1 gives
        # -4*(-2 - 6)^2 = -256; cross-checked against cofactor expansion
        A, B = n4_gram_pair((1, 1, -2), (2, -3, 1))
        C = A.add(B)
        assert naive_det(C.rows()) == -256
        assert det(C) == -256

    @given(m=sym_matrices(max_order=5))
    @settings(max_examples=150, deadline=None)
    def test_det_matches_cofactor_oracle(self, m):
        assert det(m) == naive_det(m.rows())

    def test_det_rows_non_symmetric(self):
        rows = [[Fraction(1), Fraction(2)], [Fraction(5), Fraction(1)]]
        assert det_rows(rows) == naive_det(rows) == -9


class TestMinor:
    def test_single_entry(self):
        assert minor(SymMatrix.diagonal([2, 3]), {0}, {0}) == 2

    def test_upper_block_of_n4_A_is_singular(self):
        A, _ = n4_gram_pair((1, 1, -2), (2, -3, 1))
        assert minor(A, {0, 1}, {0, 1}) == 0

    def test_b_block_minors(self):
        # B has a zero first row/col, so any principal minor containing
        # index 0 vanishes; the trailing 3x3 block is -4*b2^2*b3^2*b4^2 = -144
        # (both frozen from cofactor expansion)
        _, B = n4_gram_pair((1, 1, -2), (2, -3, 1))
        assert naive_det([[B[i, j] for j in (0, 1, 2)] for i in (0, 1, 2)]) == 0
        assert minor(B, {0, 1, 2}, {0, 1, 2}) == 0
        assert naive_det([[B[i, j] for j in (1, 2, 3)] for i in (1, 2, 3)]) == -144
        assert minor(B, {1, 2, 3}, {1, 2, 3}) == -144
        assert rank(B) == 3

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            minor(SymMatrix.identity(2), {0, 2}, {0, 1})

    def test_off_diagonal_minor(self):
        m = SymMatrix.from_rows([[1, 2, 3], [2, 4, 5], [3, 5, 6]])
        rows, cols = (0, 1), (1, 2)
        sub = [[m[i, j] for j in cols] for i in rows]
        assert minor(m, rows, cols) == naive_det(sub)


class TestPrincipalMinors2:
    def test_identity(self):
        out = principal_minors_order2(SymMatrix.identity(3))
        assert [v for _, v in out] == [1, 1, 1]
        assert [ij for ij, _ in out] == [(0, 1), (0, 2), (1, 2)]

    @pytest.mark.parametrize("t", [Fraction(1, 3), Fraction(1, 2), 1, 2, 3])
    def test_rank1_pair_combination_constant(self, t):
        # det(t*A + B/t) for rank-1 pairs: frozen at (a1*b2 - a2*b1)^2 = 25
        A = outer_pair_matrix(1, 2)
        B = outer_pair_matrix(3, 1)
        C = A.scale(t).add(B.scale(Fraction(1, Fraction(t))))
        [(_, m2)] = principal_minors_order2(C)
        assert m2 == 25


class TestRankAndKernel:
    def test_zero_matrix(self):
        assert rank(SymMatrix.zeros(3)) == 0

    def test_full_rank(self):
        assert rank(SymMatrix.identity(4)) == 4

    def test_null_space_identity_empty(self):
        assert null_space(SymMatrix.identity(3)) == []

    def test_null_space_of_rank1(self):
        m = outer_pair_matrix(1, 2)
        basis = null_space(m)
        assert len(basis) == 1
        v = basis[0]
        assert m.matvec(v) == (0, 0)

    @given(m=sym_matrices(max_order=5))
    @settings(max_examples=100, deadline=None)
    def test_rank_nullity(self, m):
        basis = null_space(m)
        assert rank(m) + len(basis) == m.order
        for v in basis:
            assert all(x == 0 for x in m.matvec(v))


class TestSignature:
    def test_diag_indefinite(self):
        assert signature(SymMatrix.diagonal([1, -1])) == Signature(1, 1, 0)

    def test_identity(self):
        assert signature(SymMatrix.identity(4)) == Signature(4, 0, 0)

    def test_hyperbolic_block(self):
        m = SymMatrix.from_rows([[0, 1], [1, 0]])
        assert signature(m) == Signature(1, 1, 0)

    def test_n4_family_signature(self):
        # frozen: det < 0 with all 2x2 principal minors positive forces (3,1,0)
        A, B = n4_gram_pair((1, 1, -2), (2, -3, 1))
        assert signature(A.add(B)) == Signature(3, 1, 0)

    @given(m=sym_matrices(max_order=4))
    @settings(max_examples=100, deadline=None)
    def test_counts_sum_to_order(self, m):
        s = signature(m)
        assert s.order == m.order
        assert s.zero == m.order - rank(m)

    @given(m=sym_matrices(max_order=4), data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_sylvester_congruence_invariance(self, m, data):
        n = m.order
        rows = data.draw(
            st.lists(
                st.lists(frac_entries, min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            ).filter(lambda r: det_rows([[Fraction(x) for x in row] for row in r]) != 0)
        )
        assert signature(m.congruence(rows)) == signature(m)

    @given(m=sym_matrices(max_order=4))
    @settings(max_examples=100, deadline=None)
    def test_det_sign_matches_negative_count(self, m):
        s = signature(m)
        d = det(m)
        if s.zero > 0:
            assert d == 0
        else:
            assert (d > 0) == (s.negative % 2 == 0)


class TestSerialization:
    def test_frac_str_roundtrip(self):
        for q in [Fraction(3, 4), Fraction(-5), Fraction(0), Fraction(7, 1)]:
            assert parse_frac(frac_str(q)) == q
