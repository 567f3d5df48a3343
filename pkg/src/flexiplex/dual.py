"""Dual simplices in indefinite inner-product spaces and the volume-transfer
relations between a centered simplex and its dual.

For a centered full-dimensional simplex P with vertex vectors v_i, the dual
with parameter c > 0 has one vertex per omitted constraint: Q_j solves
v_i . Q_j = c for all i != j. Two transfer relations tie the volumes
together, with constants depending only on the dimension:

    V_{n-2}(F_ij) = c2 * V_2(O P_i P_j) / V_n(P) * c^(n-2)
    V_n(Q)        = c0 / V_n(P) * c^n

The constants are calibrated empirically in the Euclidean case (two unrelated
simplices, all vertex pairs) rather than hardcoded, and every use on the
deformation families cross-checks transfer values against directly measured
volumes.

This module is the only floating-point layer: dual vertices solve linear
systems with irrational realized coordinates. Exactness lives upstream.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .exactmat import SymMatrix, det, frac_str, principal_minors_order2
from .families import (
    DEFAULT_GRID,
    KIND_EVEN,
    KIND_ODD,
    DeformationFamily,
    at,
    membership_U0,
    verified_grid,
)
from .realize import RealizedSimplex, Signature, metric_diagonal, realize_centered

REL_TOL_TRANSFER = 1e-8


class DegenerateNormals(ValueError):
    """A dual vertex system is singular, or a vertex vector is lightlike."""


class CalibrationInconsistent(RuntimeError):
    """The calibration probes disagree beyond tolerance."""


class ZeroVolumeP(ZeroDivisionError):
    """Transfer formulas divide by V_n(P), which vanished."""


class TransferMismatch(RuntimeError):
    """A transfer-formula value disagrees with the direct measurement."""


@dataclass(frozen=True)
class DualPair:
    """A centered simplex, its dual, the scale c, and the (c0, c2) constants
    for this dimension."""

    P: RealizedSimplex
    Q: RealizedSimplex
    c: float
    constants: tuple[float, float]

    @property
    def n(self) -> int:
        return self.P.dim


# -- direct volume measurement ------------------------------------------------


def volume_of_vertices(vectors: np.ndarray, sig: Signature) -> float:
    """k-volume of the simplex spanned by the given vertex rows:
    sqrt|det Gram| / k! over edge vectors from the first vertex."""
    k = vectors.shape[0] - 1
    if k == 0:
        return 0.0
    eta = metric_diagonal(sig)
    edges = vectors[1:] - vectors[0]
    gram = (edges * eta) @ edges.T
    return math.sqrt(abs(np.linalg.det(gram))) / math.factorial(k)


def simplex_volume(r: RealizedSimplex) -> float:
    """Full volume of a realized simplex (its vectors read as vertices)."""
    return volume_of_vertices(r.vectors, r.signature)


def face_volume(r: RealizedSimplex, subset: Sequence[int]) -> float:
    idx = sorted(subset)
    return volume_of_vertices(r.vectors[idx], r.signature)


def triangle_volume_with_origin(r: RealizedSimplex, i: int, j: int) -> float:
    pts = np.vstack([np.zeros(r.dim), r.vectors[i], r.vectors[j]])
    return volume_of_vertices(pts, r.signature)


def centered_volume_sq_exact(u: SymMatrix) -> Fraction:
    """Exact signed squared n-volume of the simplex whose centered vertex
    Gram is u: edge vectors from the last vertex, det / (n!)^2."""
    size = u.order
    n = size - 1
    last = size - 1

    def entry(i, j):
        return u[i, j] - u[i, last] - u[last, j] + u[last, last]

    gram = SymMatrix.from_function(n, entry)
    return det(gram) / Fraction(math.factorial(n)) ** 2


# -- dual construction ---------------------------------------------------------


def dual_simplex(p: RealizedSimplex, c: float) -> RealizedSimplex:
    """Vertices of the dual: Q_j solves v_i . Q_j = c for all i != j.

    Requires P centered and full-dimensional; refuses lightlike vertex
    vectors (they would make v_i parallel to its dual facet). The dual's
    centroid is verified to sit at the origin.
    """
    if c <= 0:
        raise ValueError("dual parameter c must be positive")
    vecs = p.vectors
    count, dim = vecs.shape
    if count != dim + 1:
        raise DegenerateNormals(f"expected {dim + 1} vertex vectors, got {count}")
    scale = float(np.max(np.abs(vecs))) or 1.0
    if np.max(np.abs(np.sum(vecs, axis=0))) > 1e-9 * scale:
        raise DegenerateNormals("P is not centered at the origin")
    if p.gram_exact is not None:
        if any(p.gram_exact[i, i] == 0 for i in range(p.gram_exact.order)):
            raise DegenerateNormals("a vertex vector is lightlike (v_i^2 = 0)")
    else:
        eta = metric_diagonal(p.signature)
        norms = np.einsum("ij,j,ij->i", vecs, eta, vecs)
        if np.min(np.abs(norms)) <= 1e-12 * scale**2:
            raise DegenerateNormals("a vertex vector is numerically lightlike")
    eta = metric_diagonal(p.signature)
    rows_all = vecs * eta
    out = np.zeros_like(vecs)
    for j in range(count):
        rows = np.delete(rows_all, j, axis=0)
        try:
            out[j] = np.linalg.solve(rows, np.full(dim, float(c)))
        except np.linalg.LinAlgError as err:
            raise DegenerateNormals(f"vertex system {j} is singular") from err
    q_scale = float(np.max(np.abs(out))) or 1.0
    if np.max(np.abs(np.sum(out, axis=0))) > 1e-9 * q_scale * count:
        raise DegenerateNormals("dual centroid did not close up at the origin")
    return RealizedSimplex(
        signature=p.signature,
        vectors=out,
        gram_exact=None,
        centered=True,
    )


def normal_orientations(p: RealizedSimplex) -> list[str]:
    """Per-vertex metadata: each v_i is an outward normal of the dual facet
    when v_i^2 > 0, inward when v_i^2 < 0, parallel when 0."""
    out = []
    eta = metric_diagonal(p.signature)
    norms = np.einsum("ij,j,ij->i", p.vectors, eta, p.vectors)
    for value in norms:
        if value > 0:
            out.append("outward")
        elif value < 0:
            out.append("inward")
        else:
            out.append("parallel")
    return out


def make_dual_pair(
    p: RealizedSimplex, c: float, constants: Optional[tuple[float, float]] = None
) -> DualPair:
    """Build and validate a dual pair: every defining product v_i . Q_j
    (i != j) must equal c to 1e-9 relative."""
    q = dual_simplex(p, c)
    eta = metric_diagonal(p.signature)
    products = (p.vectors * eta) @ q.vectors.T
    count = p.count
    mask = ~np.eye(count, dtype=bool)
    worst = float(np.max(np.abs(products[mask] - c)))
    if worst > 1e-9 * abs(c) * max(1.0, float(np.max(np.abs(products)))):
        raise DegenerateNormals(f"dual products deviate from c by {worst}")
    if constants is None:
        constants = calibrate_constants(p.dim)
    return DualPair(P=p, Q=q, c=float(c), constants=constants)


# -- calibration ----------------------------------------------------------------


def _regular_centered_gram(n: int) -> SymMatrix:
    return SymMatrix.from_function(
        n + 1,
        lambda i, j: Fraction(n, n + 1) if i == j else Fraction(-1, n + 1),
    )


def _skewed_centered_gram(n: int) -> SymMatrix:
    """Centered Gram of the simplex {0, e1 + e2, e2, e3, ..., en}: affinely
    independent, Euclidean, and not congruent to the regular one."""
    pts = [[Fraction(0)] * n]
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        if i == 0:
            row[1] = Fraction(1)
        pts.append(row)
    centroid = [
        sum(pt[k] for pt in pts) / Fraction(n + 1) for k in range(n)
    ]
    centered = [[x - cx for x, cx in zip(pt, centroid)] for pt in pts]
    return SymMatrix.from_function(
        n + 1,
        lambda i, j: sum(a * b for a, b in zip(centered[i], centered[j])),
    )


@lru_cache(maxsize=None)
def calibrate_constants(n: int) -> tuple[float, float]:
    """Empirical (c0, c2) for dimension n.

    Probes two unrelated Euclidean centered simplices at c = 1 and demands
    that V_n(Q) V_n(P) and V_{n-2}(F_ij) V_n(P) / V_2(O P_i P_j) agree
    across both and across all vertex pairs to 1e-8 relative.
    """
    if n < 3:
        raise ValueError("calibration needs n >= 3")
    c0_probes: list[float] = []
    c2_probes: list[float] = []
    for gram in (_regular_centered_gram(n), _skewed_centered_gram(n)):
        p = realize_centered(gram)
        q = dual_simplex(p, 1.0)
        vn_p = simplex_volume(p)
        vn_q = simplex_volume(q)
        if vn_p == 0:
            raise ZeroVolumeP("calibration simplex has zero volume")
        c0_probes.append(vn_q * vn_p)
        for i, j in itertools.combinations(range(n + 1), 2):
            tri = triangle_volume_with_origin(p, i, j)
            face = face_volume(q, [k for k in range(n + 1) if k not in (i, j)])
            c2_probes.append(face * vn_p / tri)
    for probes, label in ((c0_probes, "c0"), (c2_probes, "c2")):
        lo, hi = min(probes), max(probes)
        if hi - lo > 1e-8 * max(abs(lo), abs(hi)):
            raise CalibrationInconsistent(
                f"{label} probes spread beyond tolerance: [{lo}, {hi}]"
            )
    c0 = sum(c0_probes) / len(c0_probes)
    c2 = sum(c2_probes) / len(c2_probes)
    if c0 <= 0 or c2 <= 0:
        raise CalibrationInconsistent("calibrated constants must be positive")
    return (c0, c2)


# -- transfer formulas -----------------------------------------------------------


def codim2_volume_via_transfer(pair: DualPair, i: int, j: int) -> float:
    """V_{n-2} of the dual face where facets i and j meet, via the transfer
    formula; cross-checked against the directly measured Gram volume."""
    n = pair.n
    vn_p = simplex_volume(pair.P)
    if vn_p == 0:
        raise ZeroVolumeP("V_n(P) = 0")
    _, c2 = pair.constants
    tri = triangle_volume_with_origin(pair.P, i, j)
    value = c2 * tri / vn_p * pair.c ** (n - 2)
    direct = face_volume(pair.Q, [k for k in range(n + 1) if k not in (i, j)])
    if abs(value - direct) > REL_TOL_TRANSFER * max(abs(value), abs(direct), 1e-300):
        raise TransferMismatch(
            f"face ({i},{j}): transfer {value} vs direct {direct}"
        )
    return value


def dual_volume(pair: DualPair) -> float:
    """V_n of the dual via the transfer formula; cross-checked against the
    direct measurement."""
    vn_p = simplex_volume(pair.P)
    if vn_p == 0:
        raise ZeroVolumeP("V_n(P) = 0")
    c0, _ = pair.constants
    value = c0 / vn_p * pair.c ** pair.n
    direct = simplex_volume(pair.Q)
    if abs(value - direct) > REL_TOL_TRANSFER * max(abs(value), abs(direct), 1e-300):
        raise TransferMismatch(f"dual volume: transfer {value} vs direct {direct}")
    return value


# -- deformation families through the dual ---------------------------------------


def rescale_c(family: DeformationFamily, t) -> float:
    """The c(t) making the dual's codimension-2 volumes t-independent:
    c(t) = (V_n(P(t)) / V_n(P(1)))^(1/(n-2)), normalized so c(1) = 1.

    Because the triangle areas V_2(O P_i P_j) are exactly t-constant, the
    transfer formula then cancels the V_n(P(t)) drift. For families whose
    V_n(P(t)) is itself constant this is identically 1.
    """
    if family.kind not in (KIND_ODD, KIND_EVEN):
        raise ValueError("rescaling applies to the matrix-family kinds")
    u_t = at(family, t)
    if not membership_U0(u_t):
        raise ValueError(f"t={t} is outside the verified strict-membership range")
    n = family.n
    vol_sq_t = centered_volume_sq_exact(u_t)
    vol_sq_1 = centered_volume_sq_exact(at(family, 1))
    if vol_sq_t == 0 or vol_sq_1 == 0:
        raise ZeroVolumeP("family member has zero volume")
    ratio = abs(float(vol_sq_t)) / abs(float(vol_sq_1))
    return ratio ** (1.0 / (2 * (n - 2)))


def family_dual_report(
    family: DeformationFamily, grid: Sequence = DEFAULT_GRID
) -> dict:
    """Run the full dual pipeline along the family's verified grid.

    Per verified t: realize P(t) from the exact matrix, rescale c, build the
    dual Q(t), and record c(t), every codimension-2 face volume of Q(t)
    (directly measured, transfer cross-checked), V_n(Q(t)), and the sorted
    squared edge lengths of Q(t) used as the congruence-invariant witness.
    """
    grid_ok = verified_grid(family, grid)
    if not grid_ok:
        raise ValueError("no grid point passes strict membership")
    n = family.n
    constants = calibrate_constants(n)
    pairs = list(itertools.combinations(range(n + 1), 2))
    c_of_t: dict[Fraction, float] = {}
    codim2: dict[Fraction, dict] = {}
    vn_q: dict[Fraction, float] = {}
    edges_sorted: dict[Fraction, list[float]] = {}
    euclidean_angles = True
    for t in grid_ok:
        u_t = at(family, t)
        euclidean_angles &= all(v > 0 for _, v in principal_minors_order2(u_t))
        p = realize_centered(u_t)
        c_t = rescale_c(family, t)
        pair = make_dual_pair(p, c_t, constants)
        c_of_t[t] = c_t
        codim2[t] = {
            (i, j): codim2_volume_via_transfer(pair, i, j) for i, j in pairs
        }
        vn_q[t] = dual_volume(pair)
        q = pair.Q
        edges_sorted[t] = sorted(
            abs(q.squared_edge(i, j)) for i, j in pairs
        )
    ts = list(grid_ok)
    ref = codim2[ts[0]]
    codim2_spread = max(
        _relative_spread([codim2[t][ij] for t in ts]) for ij in pairs
    )
    vnq_spread = _relative_spread([vn_q[t] for t in ts])
    edge_spread = max(
        _relative_spread([edges_sorted[t][k] for t in ts])
        for k in range(len(ref))
    )
    report = {
        "n": n,
        "kind": family.kind,
        "t_grid": [frac_str(t) for t in ts],
        "c_of_t": {frac_str(t): f"{c_of_t[t]:.17g}" for t in ts},
        "codim2_volumes": {
            frac_str(t): {f"{i}_{j}": f"{v:.17g}" for (i, j), v in codim2[t].items()}
            for t in ts
        },
        "Vn_Q": {frac_str(t): f"{vn_q[t]:.17g}" for t in ts},
        "verdicts": {
            "codim2_constant": bool(codim2_spread <= REL_TOL_TRANSFER),
            "codim2_spread": codim2_spread,
            "Vn_Q_constant": bool(vnq_spread <= REL_TOL_TRANSFER),
            "Vn_Q_spread": vnq_spread,
            "noncongruent_witness": bool(edge_spread > 1e-4),
            "edge_spread": edge_spread,
            "euclidean_angles": bool(euclidean_angles),
        },
    }
    return report


def _relative_spread(values: Sequence[float]) -> float:
    lo, hi = min(values), max(values)
    denom = max(abs(lo), abs(hi))
    if denom == 0:
        return 0.0
    return (hi - lo) / denom
