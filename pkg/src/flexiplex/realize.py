"""Embedding symmetric Gram matrices as vector configurations in an
indefinite inner-product space.

The metric convention is "positives first": coordinates 1..p carry +1 and
the rest -1. Floating eigendecomposition is done by cyclic Jacobi sweeps,
but the inertia is always taken from the exact rational computation; if the
two disagree the operation refuses rather than guessing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exactmat import Signature, SymMatrix, det, frac_str, rank, signature


class DimensionMismatch(ValueError):
    """Vector lengths do not match the metric signature."""


class SingularMatrix(ValueError):
    """Full-rank realization requires a nonzero determinant."""


class RankMismatch(ValueError):
    """A centered realization needs rank exactly order - 1."""


class OnesNotInKernel(ValueError):
    """A centered Gram matrix must kill the all-ones vector."""


class InertiaMismatch(RuntimeError):
    """Floating eigenvalue signs contradict the exact inertia."""


def metric_diagonal(sig: Signature) -> np.ndarray:
    return np.array([1.0] * sig.positive + [-1.0] * sig.negative)


def pseudo_dot(x, y, sig: Signature) -> float:
    """Indefinite bilinear product: sum of the first p coordinate products
    minus the remaining q."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dim = sig.positive + sig.negative
    if x.shape != (dim,) or y.shape != (dim,):
        raise DimensionMismatch(
            f"vectors must have dimension {dim}, got {x.shape} and {y.shape}"
        )
    return float(np.dot(x * metric_diagonal(sig), y))


@dataclass(frozen=True, eq=False)
class RealizedSimplex:
    """Vector configuration reproducing an exact Gram matrix.

    `vectors` has one row per realized vector, columns ordered positive
    metric axes first. `p_ambiguous` marks rank-deficient sources, where the
    count of positive directions is a convention rather than an invariant.
    """

    signature: Signature
    vectors: np.ndarray
    gram_exact: Optional[SymMatrix] = None
    p_ambiguous: bool = False
    centered: bool = False

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def gram_float(self) -> np.ndarray:
        eta = metric_diagonal(self.signature)
        return (self.vectors * eta) @ self.vectors.T

    def max_gram_error(self) -> float:
        """Max entrywise |reconstructed - exact| against the source matrix.

        For centered realizations the source has one more row/column than
        the realized base matrix; the full (n+1)-sized comparison is used.
        """
        if self.gram_exact is None:
            raise ValueError("no exact source matrix attached")
        target = np.array(self.gram_exact.to_floats())
        return float(np.max(np.abs(self.gram_float() - target)))

    def squared_edge(self, i: int, j: int) -> float:
        diff = self.vectors[i] - self.vectors[j]
        return pseudo_dot(diff, diff, self.signature)

    def to_json(self) -> str:
        payload = {
            "signature": {
                "p": self.signature.positive,
                "q": self.signature.negative,
                "z": self.signature.zero,
            },
            "p_ambiguous": self.p_ambiguous,
            "centered": self.centered,
            "vectors": [[f"{x:.17g}" for x in row] for row in self.vectors],
            "gram_exact": (
                [[frac_str(x) for x in row] for row in self.gram_exact.rows()]
                if self.gram_exact is not None
                else None
            ),
        }
        return json.dumps(payload, sort_keys=True)


def jacobi_eigh(rows: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues, eigenvectors-as-columns). Adequate and robust at
    the small orders used here; accuracy is limited only by rotation
    round-off.
    """
    a = np.array(rows, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = np.max(np.abs(a)) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * a[:, p] - s * a[:, q]
                rot_q = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = rot_p, rot_q
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rot_p, rot_q
                rot_p = c * v[:, p] - s * v[:, q]
                rot_q = s * v[:, p] + c * v[:, q]
                v[:, p], v[:, q] = rot_p, rot_q
    return a.diagonal().copy(), v


def _vectors_from_eigenpairs(eigvals, eigvecs, order) -> np.ndarray:
    """Rows of V * diag(sqrt|lambda|) for the selected eigenpair order."""
    lam = np.abs(eigvals[order])
    return eigvecs[:, order] * np.sqrt(lam)


def realize(c: SymMatrix) -> RealizedSimplex:
    """Realize a nonsingular symmetric matrix as a Gram matrix of vectors.

    Diagonalize, scale the eigenvector columns by sqrt|lambda|, and read the
    vectors off the rows, positive axes first. The (p, q) split is the exact
    inertia; Jacobi only supplies directions.
    """
    exact_det = det(c)
    if exact_det == 0:
        raise SingularMatrix("matrix is singular; use realize_rank_deficient")
    sig = signature(c)
    eigvals, eigvecs = jacobi_eigh(np.array(c.to_floats()))
    order = np.argsort(-eigvals)
    sorted_vals = eigvals[order]
    p = sig.positive
    if (p > 0 and sorted_vals[p - 1] <= 0) or (p < c.order and sorted_vals[p] >= 0):
        raise InertiaMismatch(
            f"floating eigenvalue signs disagree with exact inertia {tuple(sig)}"
        )
    vectors = _vectors_from_eigenpairs(eigvals, eigvecs, order)
    return RealizedSimplex(signature=sig, vectors=vectors, gram_exact=c)


def realize_rank_deficient(c: SymMatrix) -> RealizedSimplex:
    """Realize a possibly singular symmetric matrix, dropping the kernel
    directions.

    The zero count comes from the exact rank, never from a floating
    threshold; thresholds only decide which floating directions are kept.
    The reported p is flagged as a convention when the kernel is nontrivial.
    """
    sig = signature(c)
    eigvals, eigvecs = jacobi_eigh(np.array(c.to_floats()))
    order = np.argsort(-eigvals)
    keep = np.concatenate(
        [order[: sig.positive], order[len(order) - sig.negative :]]
    ).astype(int)
    vectors = _vectors_from_eigenpairs(eigvals, eigvecs, keep)
    return RealizedSimplex(
        signature=sig,
        vectors=vectors,
        gram_exact=c,
        p_ambiguous=sig.zero > 0,
    )


def realize_centered(u: SymMatrix) -> RealizedSimplex:
    """Realize an order-(n+1) Gram matrix with all-ones kernel as n+1
    vectors summing to zero.

    Realizes the leading n x n principal block and closes with
    v_{n+1} = -(v_1 + ... + v_n); the kernel relation makes the last
    row/column come out right.
    """
    size = u.order
    if any(x != 0 for x in u.matvec([1] * size)):
        raise OnesNotInKernel("U . 1 != 0")
    if rank(u) != size - 1:
        raise RankMismatch(f"expected rank {size - 1}, got {rank(u)}")
    base = realize(u.submatrix(range(size - 1)))
    last = -np.sum(base.vectors, axis=0)
    vectors = np.vstack([base.vectors, last])
    return RealizedSimplex(
        signature=base.signature,
        vectors=vectors,
        gram_exact=u,
        centered=True,
    )
