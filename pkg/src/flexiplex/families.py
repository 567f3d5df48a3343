"""Deformation families t*A + (1/t)*B of symmetric matrices and pseudo-
simplices whose order-2 data stays exactly constant in t.

Two flavors are built here:

* simplex families (kinds ``n4`` and ``n5``): Gram-matrix pairs assembled
  from zero-sum parameter triples, where every triangle face of the combined
  pseudo-simplex keeps a fixed signed squared area while the full volume
  moves;
* matrix families (kinds ``odd`` and ``even``): (n+1) x (n+1) pairs built
  from paired-sign block matrices, whose sum lies in the set of rank-n
  symmetric matrices with all-ones kernel and positive order-2 principal
  minors.

All family data is exact rational; sweeps assert constancy with ``==``.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactmat import (
    Signature,
    SymMatrix,
    as_fraction,
    det,
    frac_str,
    principal_minors_order2,
    rank,
    signature,
)
from .simplex import PseudoSimplex

KIND_N4 = "n4"
KIND_N5 = "n5"
KIND_ODD = "odd"
KIND_EVEN = "even"

DEFAULT_GRID = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(1),
    Fraction(3, 2),
    Fraction(2),
    Fraction(3),
)


class ZeroParameter(ValueError):
    """A generating parameter that must be nonzero is zero."""


class ConstraintViolated(ValueError):
    """A zero-sum constraint on the generating parameters fails."""


class DegenerateParameters(ValueError):
    """Parameters hit an excluded degeneration (some fixed face area is 0)."""


class MTooSmall(ValueError):
    """Block constructions need m >= 3; the m = 2 block matrix drops rank."""


class GenericityFailure(ValueError):
    """The supplied kernel parameters fail the strict-membership checks."""


class NonPositiveT(ValueError):
    """Deformation parameter t must be positive."""


class ExcludedT(ValueError):
    """A sweep grid point hits the family's degenerate t."""


@dataclass(frozen=True)
class DeformationFamily:
    """A pair (A, B) defining the path t*A + (1/t)*B.

    ``order`` is the matrix size; ``n`` the simplex dimension (equal to
    ``order`` for simplex kinds, ``order - 1`` for matrix kinds, whose
    matrices are centered vertex Grams). ``excluded_t_sq`` is the rational
    value of t^2 at which the family degenerates, when one exists.
    """

    kind: str
    order: int
    n: int
    A: SymMatrix
    B: SymMatrix
    params: dict
    excluded_t_sq: Optional[Fraction] = None
    q1: Optional[PseudoSimplex] = None
    q2: Optional[PseudoSimplex] = None

    def at(self, t) -> SymMatrix:
        return at(self, t)

    def simplex_at(self, t) -> PseudoSimplex:
        if self.q1 is None or self.q2 is None:
            raise ValueError("matrix-kind family has no pseudo-simplex pair")
        t = _positive_t(t)
        return self.q1.scale(t).add(self.q2.scale(1 / t))


@dataclass(frozen=True)
class SweepPoint:
    t: Fraction
    det: Fraction
    signature: Signature
    minors: tuple
    face_vols: Optional[dict]
    full_vol: Optional[Fraction]


@dataclass(frozen=True)
class SweepReport:
    kind: str
    order: int
    t_grid: tuple
    per_t: tuple
    verdicts: dict = field(default_factory=dict)


def _positive_t(t) -> Fraction:
    t = as_fraction(t)
    if t <= 0:
        raise NonPositiveT(f"t must be positive, got {t}")
    return t


def at(family: DeformationFamily, t) -> SymMatrix:
    """Exact t*A + (1/t)*B."""
    t = _positive_t(t)
    return family.A.scale(t).add(family.B.scale(1 / t))


# -- membership tests --------------------------------------------------------


def membership_D(m: SymMatrix) -> bool:
    """All-ones vector in the kernel, non-negative diagonal, and every
    order-2 principal minor exactly zero."""
    if any(x != 0 for x in m.matvec([1] * m.order)):
        return False
    if any(d < 0 for d in m.diagonal_entries()):
        return False
    return all(v == 0 for _, v in principal_minors_order2(m))


def membership_U(m: SymMatrix) -> bool:
    """All-ones kernel vector, non-negative diagonal and order-2 minors."""
    if any(x != 0 for x in m.matvec([1] * m.order)):
        return False
    if any(d < 0 for d in m.diagonal_entries()):
        return False
    return all(v >= 0 for _, v in principal_minors_order2(m))


def membership_U0(m: SymMatrix) -> bool:
    """Strict variant: rank order-1, all-ones kernel, positive diagonal and
    order-2 principal minors."""
    if any(x != 0 for x in m.matvec([1] * m.order)):
        return False
    if any(d <= 0 for d in m.diagonal_entries()):
        return False
    if any(v <= 0 for _, v in principal_minors_order2(m)):
        return False
    return rank(m) == m.order - 1


# -- simplex families (n = 4 and n = 5) --------------------------------------


def _zero_sum_triple(values, label: str) -> tuple[Fraction, Fraction, Fraction]:
    vals = tuple(as_fraction(v) for v in values)
    if len(vals) != 3:
        raise ConstraintViolated(f"{label} needs exactly 3 components")
    if sum(vals) != 0:
        raise ConstraintViolated(f"{label} components must sum to 0, got {vals}")
    if any(v == 0 for v in vals):
        raise ZeroParameter(f"{label} components must all be nonzero, got {vals}")
    return vals


def q0(a: Sequence) -> PseudoSimplex:
    """Tetrahedron with equal squared edge lengths on opposite sides.

    Takes (a1, a2); the third value is a3 = -a1 - a2 and must be nonzero.
    Every 2-face is a triangle with squared sides a1^2, a2^2, a3^2 and has
    zero signed squared area, while the full volume is nonzero.
    """
    vals = tuple(as_fraction(v) for v in a)
    if len(vals) == 2:
        vals = vals + (-vals[0] - vals[1],)
    a1, a2, a3 = _zero_sum_triple(vals, "a")
    squared = {
        (0, 1): a1**2,
        (2, 3): a1**2,
        (0, 2): a2**2,
        (1, 3): a2**2,
        (0, 3): a3**2,
        (1, 2): a3**2,
    }
    return PseudoSimplex.from_squared_edges(3, squared)


def _triangle_area_checks(family: DeformationFamily) -> None:
    """Require every triangle face of q1 + q2 (the t = 1 member) to have a
    positive signed squared area; by constancy this pins all t > 0."""
    combined = family.simplex_at(1)
    n = combined.n
    for subset in _subsets(n + 1, 3):
        area = combined.face(subset).signed_sq_volume().value
        if area <= 0:
            raise DegenerateParameters(
                f"face {subset}: fixed signed squared area {area} is not positive; "
                "parameters hit an excluded degeneration"
            )


def _subsets(count: int, size: int):
    import itertools

    return list(itertools.combinations(range(count), size))


def family_n4(a: Sequence, b: Sequence) -> DeformationFamily:
    """Deformation family of pseudo 4-simplices with fixed triangle areas.

    `a = (a1, a2, a3)` and `b = (b2, b3, b4)` are zero-sum triples of nonzero
    rationals. A is the base-vertex Gram of the tetrahedron-with-doubled-
    vertex carrying a (vertices 0 and 4 coincide), B the same for b (vertices
    0 and 1 coincide). det(t*A + (1/t)*B) =
    -4 a1^2 b4^2 (a2 a3 t + b2 b3 / t)^2, so the family degenerates only at
    t^2 = -b2 b3 / (a2 a3), recorded when positive.
    """
    a1, a2, a3 = _zero_sum_triple(a, "a")
    b2, b3, b4 = _zero_sum_triple(b, "b")
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
    t_sq = -b2 * b3 / (a2 * a3)
    fam = DeformationFamily(
        kind=KIND_N4,
        order=4,
        n=4,
        A=A,
        B=B,
        params={"a": (a1, a2, a3), "b": (b2, b3, b4)},
        excluded_t_sq=t_sq if t_sq > 0 else None,
        q1=PseudoSimplex.from_gram(A),
        q2=PseudoSimplex.from_gram(B),
    )
    _triangle_area_checks(fam)
    return fam


def family_n5(a: Sequence, b: Sequence) -> DeformationFamily:
    """Deformation family of pseudo 5-simplices with fixed triangle areas.

    `a = (a1, a2, a3)` and `b = (b2, b4, b5)` are zero-sum nonzero triples.
    Vertices 0/5 and 3/4 of the first component coincide, vertices 0/1 and
    2/3 of the second. det(t*A + (1/t)*B) =
    -16 a1^2 a2 a3 b2 b4 b5^2 (a2 a3 t + b2 b4 / t); the family degenerates
    only at t^2 = -b2 b4 / (a2 a3), recorded when positive.
    """
    a1, a2, a3 = _zero_sum_triple(a, "a")
    b2, b4, b5 = _zero_sum_triple(b, "b")
    A = SymMatrix.from_rows(
        [
            [a1 * a1, -a1 * a2, -a1 * a3, -a1 * a3, 0],
            [-a1 * a2, a2 * a2, -a2 * a3, -a2 * a3, 0],
            [-a1 * a3, -a2 * a3, a3 * a3, a3 * a3, 0],
            [-a1 * a3, -a2 * a3, a3 * a3, a3 * a3, 0],
            [0, 0, 0, 0, 0],
        ]
    )
    B = SymMatrix.from_rows(
        [
            [0, 0, 0, 0, 0],
            [0, b2 * b2, b2 * b2, -b2 * b4, -b2 * b5],
            [0, b2 * b2, b2 * b2, -b2 * b4, -b2 * b5],
            [0, -b2 * b4, -b2 * b4, b4 * b4, -b4 * b5],
            [0, -b2 * b5, -b2 * b5, -b4 * b5, b5 * b5],
        ]
    )
    t_sq = -b2 * b4 / (a2 * a3)
    fam = DeformationFamily(
        kind=KIND_N5,
        order=5,
        n=5,
        A=A,
        B=B,
        params={"a": (a1, a2, a3), "b": (b2, b4, b5)},
        excluded_t_sq=t_sq if t_sq > 0 else None,
        q1=PseudoSimplex.from_gram(A),
        q2=PseudoSimplex.from_gram(B),
    )
    _triangle_area_checks(fam)
    return fam


# -- matrix families (any n >= 5) ---------------------------------------------


def c_block_matrix(m: int) -> tuple[SymMatrix, SymMatrix]:
    """The 2m x 2m paired-sign matrices (C, C').

    C has +1 on the m diagonal 2x2 blocks and -1 elsewhere; C' is C with the
    last row and column moved to the front. Both have rank m for m >= 3
    (for m = 2 the underlying m x m sign core drops to rank 1).
    """
    if m < 3:
        raise MTooSmall("block construction needs m >= 3")
    size = 2 * m
    c = SymMatrix.from_function(
        size, lambda i, j: Fraction(1) if i // 2 == j // 2 else Fraction(-1)
    )
    perm = [size - 1] + list(range(size - 1))
    c_prime = SymMatrix.from_function(size, lambda i, j: c[perm[i], perm[j]])
    return c, c_prime


def expand_kernel_d(free: Sequence) -> tuple[Fraction, ...]:
    """Expand m free values to the paired kernel form
    (x1, -x1, x2, -x2, ..., xm, -xm) of the block matrix C."""
    out: list[Fraction] = []
    for x in free:
        x = as_fraction(x)
        out.extend((x, -x))
    return tuple(out)


def expand_kernel_d_prime(free: Sequence) -> tuple[Fraction, ...]:
    """Expand m free values to the kernel form of C':
    (-ym, y1, -y1, y2, -y2, ..., y_{m-1}, -y_{m-1}, ym)."""
    ys = [as_fraction(x) for x in free]
    out: list[Fraction] = [-ys[-1]]
    for y in ys[:-1]:
        out.extend((y, -y))
    out.append(ys[-1])
    return tuple(out)


def _pairwise_generic(d: Sequence[Fraction], d_prime: Sequence[Fraction]) -> bool:
    size = len(d)
    for i in range(size):
        for j in range(i + 1, size):
            if abs(d[i] * d_prime[j]) == abs(d[j] * d_prime[i]):
                return False
    return True


def choose_generic_d(m: int, seed: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Deterministic nonzero kernel vectors (d, d') with
    |d_i d'_j| != |d_j d'_i| for all i != j.

    Free coordinates are drawn as integers in [1, 100] from a seeded stream,
    expanded to the paired kernel forms, and redrawn until the pairwise
    condition holds (capped at 1000 attempts).
    """
    if m < 3:
        raise MTooSmall("block construction needs m >= 3")
    rng = random.Random(seed)
    for _ in range(1000):
        d = expand_kernel_d([rng.randint(1, 100) for _ in range(m)])
        d_prime = expand_kernel_d_prime([rng.randint(1, 100) for _ in range(m)])
        if _pairwise_generic(d, d_prime):
            return d, d_prime
    raise GenericityFailure(f"no generic kernel pair found for m={m}, seed={seed}")


def _scaled_sign_matrix(c: SymMatrix, d: Sequence[Fraction]) -> SymMatrix:
    """diag(d)^T * C * diag(d), entrywise d_i * C_ij * d_j."""
    return SymMatrix.from_function(c.order, lambda i, j: d[i] * c[i, j] * d[j])


def family_odd_n(m: int, d: Sequence, d_prime: Sequence) -> DeformationFamily:
    """Matrix family for odd n = 2m - 1 on order-2m matrices.

    A = diag(d) C diag(d) and B = diag(d') C' diag(d') for the block pair
    (C, C'); both lie in the degenerate set (all order-2 principal minors 0,
    all-ones kernel), and for generic parameters their sum has rank 2m - 1
    with all order-2 principal minors positive.
    """
    c, c_prime = c_block_matrix(m)
    d = tuple(as_fraction(x) for x in d)
    d_prime = tuple(as_fraction(x) for x in d_prime)
    if len(d) != 2 * m or len(d_prime) != 2 * m:
        raise ValueError(f"kernel vectors must have length {2*m}")
    if any(x == 0 for x in d) or any(x == 0 for x in d_prime):
        raise ZeroParameter("kernel vectors must be entirely nonzero")
    if any(x != 0 for x in c.matvec(d)):
        raise ConstraintViolated("d is not in the kernel of the block matrix")
    if any(x != 0 for x in c_prime.matvec(d_prime)):
        raise ConstraintViolated("d' is not in the kernel of the moved block matrix")
    a = _scaled_sign_matrix(c, d)
    b = _scaled_sign_matrix(c_prime, d_prime)
    u = a.add(b)
    if not membership_U0(u):
        raise GenericityFailure(
            "A + B misses strict membership (rank or an order-2 minor); "
            "choose different kernel parameters"
        )
    return DeformationFamily(
        kind=KIND_ODD,
        order=2 * m,
        n=2 * m - 1,
        A=a,
        B=b,
        params={"d": d, "d_prime": d_prime},
    )


def family_even_n(m: int, d: Sequence, d_second: Sequence) -> DeformationFamily:
    """Matrix family for even n = 2m on order-(2m+1) matrices.

    A places diag(d) C diag(d) in the upper-left corner, B places
    diag(d') C diag(d') in the lower-right corner (zero elsewhere), with both
    d and d' nonzero vectors in the paired kernel form of C. Both summands
    have rank m; their sum has rank 2m and, for generic parameters, positive
    order-2 principal minors.

    The two corners need independent kernel vectors: with d' = d, the order-2
    minor at positions (1, 3) is (d_1 d'_3 - d_3 d'_1)^2 = 0 identically, so
    a single shared vector can never reach strict membership.
    """
    c, _ = c_block_matrix(m)
    d = tuple(as_fraction(x) for x in d)
    d2 = tuple(as_fraction(x) for x in d_second)
    if len(d) != 2 * m or len(d2) != 2 * m:
        raise ValueError(f"kernel vectors must have length {2*m}")
    if any(x == 0 for x in d) or any(x == 0 for x in d2):
        raise ZeroParameter("kernel vectors must be entirely nonzero")
    for vec in (d, d2):
        if any(x != 0 for x in c.matvec(vec)):
            raise ConstraintViolated("vector is not in the kernel of the block matrix")
    a0 = _scaled_sign_matrix(c, d)
    b0 = _scaled_sign_matrix(c, d2)
    size = 2 * m + 1

    def upper(i, j):
        return a0[i, j] if i < 2 * m and j < 2 * m else Fraction(0)

    def lower(i, j):
        return b0[i - 1, j - 1] if i >= 1 and j >= 1 else Fraction(0)

    a = SymMatrix.from_function(size, upper)
    b = SymMatrix.from_function(size, lower)
    u = a.add(b)
    if not membership_U0(u):
        raise GenericityFailure(
            "A + B misses strict membership (rank or an order-2 minor); "
            "choose different kernel vectors"
        )
    return DeformationFamily(
        kind=KIND_EVEN,
        order=size,
        n=2 * m,
        A=a,
        B=b,
        params={"d": d, "d_second": d2},
    )


def build_family(n: int, seed: int = 1) -> DeformationFamily:
    """Construct a matrix family for any n >= 5, retrying seeds until the
    strict-membership checks pass (deterministic for fixed n and seed)."""
    if n < 5:
        raise ValueError("matrix families need n >= 5")
    for attempt in range(1000):
        try:
            if n % 2 == 1:
                m = (n + 1) // 2
                d, d_prime = choose_generic_d(m, seed + attempt)
                return family_odd_n(m, d, d_prime)
            m = n // 2
            rng = random.Random(seed + attempt)
            d = expand_kernel_d([rng.randint(1, 100) for _ in range(m)])
            d_second = expand_kernel_d([rng.randint(1, 100) for _ in range(m)])
            return family_even_n(m, d, d_second)
        except GenericityFailure:
            continue
    raise GenericityFailure(f"could not build a family for n={n}, seed={seed}")


# -- sweeps -------------------------------------------------------------------


def sweep(family: DeformationFamily, grid: Sequence = DEFAULT_GRID) -> SweepReport:
    """Evaluate the family on a grid of positive rationals.

    Records exact order-2 principal minors, determinant, and inertia per t;
    for simplex kinds also every triangle-face signed squared area and the
    full signed squared volume. Verdicts compare against the first grid point
    with exact equality.
    """
    grid = tuple(_positive_t(t) for t in grid)
    if not grid:
        raise ValueError("grid must be nonempty")
    if family.excluded_t_sq is not None:
        for t in grid:
            if t * t == family.excluded_t_sq:
                raise ExcludedT(
                    f"t={t} hits the degenerate value t^2={family.excluded_t_sq}"
                )
    points = []
    for t in grid:
        m = at(family, t)
        minors = tuple(v for _, v in principal_minors_order2(m))
        face_vols = None
        full_vol = None
        if family.kind in (KIND_N4, KIND_N5):
            q = family.simplex_at(t)
            face_vols = {
                subset: q.face(subset).signed_sq_volume().value
                for subset in _subsets(q.n + 1, 3)
            }
            full_vol = q.signed_sq_volume().value
        points.append(
            SweepPoint(
                t=t,
                det=det(m),
                signature=signature(m),
                minors=minors,
                face_vols=face_vols,
                full_vol=full_vol,
            )
        )
    first = points[0]
    verdicts = {
        "minors_constant": all(p.minors == first.minors for p in points),
        "det_constant": all(p.det == first.det for p in points),
        "signature_trace": [tuple(p.signature) for p in points],
    }
    if first.face_vols is not None:
        verdicts["face_vols_constant"] = all(
            p.face_vols == first.face_vols for p in points
        )
    return SweepReport(
        kind=family.kind,
        order=family.order,
        t_grid=grid,
        per_t=tuple(points),
        verdicts=verdicts,
    )


def verified_grid(family: DeformationFamily, grid: Sequence = DEFAULT_GRID) -> tuple:
    """Sub-grid around t=1 where strict membership holds and the inertia
    matches the t=1 member (matrix kinds only see a neighborhood guarantee,
    so each point is verified, never assumed)."""
    sig_at_1 = signature(at(family, 1))
    out = []
    for t in grid:
        t = _positive_t(t)
        m = at(family, t)
        if membership_U0(m) and signature(m) == sig_at_1:
            out.append(t)
    return tuple(out)


# -- export -------------------------------------------------------------------


def family_descriptor(family: DeformationFamily) -> dict:
    desc = {
        "kind": family.kind,
        "order": family.order,
        "n": family.n,
        "params": {
            key: [frac_str(v) for v in vals] for key, vals in family.params.items()
        },
        "excluded_t_sq": (
            frac_str(family.excluded_t_sq) if family.excluded_t_sq is not None else None
        ),
        "A": [[frac_str(x) for x in row] for row in family.A.rows()],
        "B": [[frac_str(x) for x in row] for row in family.B.rows()],
    }
    return desc


def family_to_json(family: DeformationFamily) -> str:
    return json.dumps(family_descriptor(family), indent=2, sort_keys=True) + "\n"


def sweep_to_csv(report: SweepReport) -> str:
    """One row per t: [t, det, p, q, z, minor_(i,j)..., face_vol_(S)...]."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    pair_labels = [
        f"minor_{i}_{j}"
        for i in range(report.order)
        for j in range(i + 1, report.order)
    ]
    face_labels = []
    if report.per_t and report.per_t[0].face_vols is not None:
        face_labels = [
            "face_vol_" + "_".join(map(str, s)) for s in sorted(report.per_t[0].face_vols)
        ]
        face_labels.append("full_vol")
    writer.writerow(["t", "det", "p", "q", "z", *pair_labels, *face_labels])
    for p in report.per_t:
        row = [
            frac_str(p.t),
            frac_str(p.det),
            p.signature.positive,
            p.signature.negative,
            p.signature.zero,
            *[frac_str(v) for v in p.minors],
        ]
        if p.face_vols is not None:
            row.extend(frac_str(p.face_vols[s]) for s in sorted(p.face_vols))
            row.append(frac_str(p.full_vol))
        writer.writerow(row)
    return out.getvalue()
