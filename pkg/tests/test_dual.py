"""Dual-simplex and volume-transfer tests.

Brute-force 2D coordinates and the direct Gram-volume path serve as the
independent checks on the transfer formulas.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from flexiplex.dual import (
    CalibrationInconsistent,
    DegenerateNormals,
    DualPair,
    calibrate_constants,
    centered_volume_sq_exact,
    codim2_volume_via_transfer,
    dual_simplex,
    dual_volume,
    face_volume,
    family_dual_report,
    make_dual_pair,
    normal_orientations,
    rescale_c,
    simplex_volume,
    triangle_volume_with_origin,
    _regular_centered_gram,
    _skewed_centered_gram,
)
from flexiplex.exactmat import SymMatrix, det, minor
from flexiplex.families import at, build_family, family_n4, verified_grid
from flexiplex.realize import realize_centered


def regular_simplex(n):
    return realize_centered(_regular_centered_gram(n))


class TestDualSimplex:
    def test_regular_triangle_polar_dual(self):
        # brute force: the dual of the regular triangle with c = 1 is the
        # reflected triangle scaled by n + 1 = 3
        p = regular_simplex(2)
        q = dual_simplex(p, 1.0)
        np.testing.assert_allclose(q.vectors, -3.0 * p.vectors, atol=1e-9)

    def test_dual_products_hit_c(self):
        p = regular_simplex(3)
        pair = make_dual_pair(p, 2.5)
        prods = pair.P.vectors @ pair.Q.vectors.T  # Euclidean signature
        off = prods[~np.eye(4, dtype=bool)]
        np.testing.assert_allclose(off, 2.5, atol=1e-9)

    def test_uncentered_rejected(self):
        p = regular_simplex(2)
        shifted = type(p)(
            signature=p.signature,
            vectors=p.vectors + 1.0,
            gram_exact=None,
            centered=False,
        )
        with pytest.raises(DegenerateNormals):
            dual_simplex(shifted, 1.0)

    def test_orientation_metadata(self):
        p = regular_simplex(3)
        assert normal_orientations(p) == ["outward"] * 4

    def test_biduality_recovers_shape(self):
        # dual of the dual is homothetic to the original: compare squared
        # edge ratios
        p = realize_centered(_skewed_centered_gram(3))
        q = dual_simplex(p, 1.0)
        back = dual_simplex(q, 1.0)
        pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
        ratios = [
            back.squared_edge(i, j) / p.squared_edge(i, j) for i, j in pairs
        ]
        assert max(ratios) - min(ratios) <= 1e-8 * abs(max(ratios))


class TestCalibration:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_constants_positive_and_cached(self, n):
        c0, c2 = calibrate_constants(n)
        assert c0 > 0 and c2 > 0
        assert calibrate_constants(n) == (c0, c2)

    def test_regular_triangle_values(self):
        # frozen from the 2D brute force: V(P) = sqrt(3)/2 * ... for the
        # unit-radius regular triangle, dual scaled by 3:
        # c0 = V(Q)V(P) = 9 V(P)^2 with V(P)^2 = 27/16 at unit circumradius
        p = regular_simplex(2)
        q = dual_simplex(p, 1.0)
        v_p = simplex_volume(p)
        assert 9 * v_p**2 == pytest.approx(simplex_volume(q) * v_p, rel=1e-12)

    def test_too_small_dimension(self):
        with pytest.raises(ValueError):
            calibrate_constants(2)


class TestTransferFormulas:
    def test_transfer_equals_direct_euclidean(self):
        p = realize_centered(_skewed_centered_gram(4))
        pair = make_dual_pair(p, 1.0)
        for i, j in [(0, 1), (1, 3), (2, 4)]:
            value = codim2_volume_via_transfer(pair, i, j)
            direct = face_volume(pair.Q, [k for k in range(5) if k not in (i, j)])
            assert value == pytest.approx(direct, rel=1e-9)
        assert dual_volume(pair) == pytest.approx(simplex_volume(pair.Q), rel=1e-9)

    def test_scaling_homogeneity(self):
        p = regular_simplex(4)
        pair1 = make_dual_pair(p, 1.0)
        pair2 = make_dual_pair(p, 2.0)
        v1 = codim2_volume_via_transfer(pair1, 0, 1)
        v2 = codim2_volume_via_transfer(pair2, 0, 1)
        assert v2 == pytest.approx(2 ** (4 - 2) * v1, rel=1e-9)


class TestExactVolumeHelper:
    def test_matches_leading_principal_cofactor(self):
        # identity for centered Grams with all-ones kernel: the edge Gram
        # determinant equals (n+1)^2 times any principal cofactor (checked
        # exactly on the regular simplex: 3 = 9 * 1/3)
        fam = build_family(5, seed=1)
        u = at(fam, Fraction(3, 2))
        keep = list(range(u.order - 1))
        cofactor = minor(u, keep, keep)
        expected = u.order**2 * cofactor / Fraction(math.factorial(5)) ** 2
        assert centered_volume_sq_exact(u) == expected

        reg = _regular_centered_gram(2)
        assert minor(reg, [0, 1], [0, 1]) == Fraction(1, 3)
        assert centered_volume_sq_exact(reg) * Fraction(math.factorial(2)) ** 2 == 3

    def test_regular_simplex_volume(self):
        u = _regular_centered_gram(3)
        # unit-circumradius regular tetrahedron in centered coordinates:
        # V^2 = det of the 3x3 edge Gram / 36
        value = centered_volume_sq_exact(u)
        p = realize_centered(u)
        assert float(value) == pytest.approx(simplex_volume(p) ** 2, rel=1e-9)


class TestFamilyPipeline:
    def test_rescale_normalizes_at_1(self):
        fam = build_family(5, seed=1)
        assert rescale_c(fam, 1) == pytest.approx(1.0)

    def test_even_family_needs_no_rescale(self):
        fam = build_family(6, seed=1)
        for t in verified_grid(fam):
            assert rescale_c(fam, t) == pytest.approx(1.0, abs=1e-12)

    def test_odd_family_rescale_varies(self):
        fam = build_family(5, seed=1)
        values = [rescale_c(fam, t) for t in verified_grid(fam)]
        assert max(values) - min(values) > 1e-3

    def test_dual_report_odd(self):
        fam = build_family(5, seed=1)
        report = family_dual_report(fam)
        v = report["verdicts"]
        assert v["codim2_constant"]
        assert v["euclidean_angles"]
        assert v["noncongruent_witness"]
        assert not v["Vn_Q_constant"]
        assert v["Vn_Q_spread"] > 1e-4

    def test_dual_report_even(self):
        fam = build_family(6, seed=1)
        report = family_dual_report(fam)
        v = report["verdicts"]
        assert v["codim2_constant"]
        assert v["euclidean_angles"]
        assert v["noncongruent_witness"]
        assert v["Vn_Q_constant"]

    def test_simplex_kind_rejected(self):
        fam = family_n4((1, 1, -2), (2, -3, 1))
        with pytest.raises(ValueError):
            rescale_c(fam, 1)
