"""Pseudo-simplices: abstract simplices given only by rational squared edge
lengths, with exact Gram matrices and signed squared volumes.

A pseudo k-simplex needs no ambient space; any rational values (negative and
zero included) are legal squared edge lengths. Pseudo-simplices form a vector
space under edgewise addition and scaling, mirroring the linear bijection with
symmetric Gram matrices once a base vertex is fixed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactmat import SymMatrix, as_fraction, det, det_rows, frac_str, parse_frac


class MissingEdge(ValueError):
    """The squared-edge map does not cover every vertex pair."""


class SubsetTooSmall(ValueError):
    """A face needs at least two vertices."""


def _pairs(n: int):
    return [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class SignedSquaredVolume:
    """det(Gram)/(k!)^2 for a k-face; the sign carries the metric type."""

    value: Fraction
    order: int

    @property
    def volume(self) -> float:
        """|value|^(1/2), the non-negative volume, as a float convenience."""
        return math.sqrt(abs(float(self.value)))


@dataclass(frozen=True)
class PseudoSimplex:
    """Abstract n-simplex on vertices 0..n with rational squared edge lengths.

    `edges` stores the values for vertex pairs (i, j), i < j, in lexicographic
    order. Immutable; `add`/`scale` implement the vector-space structure.
    """

    n: int
    edges: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least a 1-simplex")
        expected = (self.n + 1) * self.n // 2
        if len(self.edges) != expected:
            raise MissingEdge(f"expected {expected} squared edges, got {len(self.edges)}")

    @staticmethod
    def from_squared_edges(n: int, squared: Mapping) -> "PseudoSimplex":
        """Build from a map (i, j) -> squared length; both orders accepted."""
        values = []
        for i, j in _pairs(n):
            if (i, j) in squared:
                values.append(as_fraction(squared[i, j]))
            elif (j, i) in squared:
                values.append(as_fraction(squared[j, i]))
            else:
                raise MissingEdge(f"missing squared edge for vertices ({i},{j})")
        return PseudoSimplex(n, tuple(values))

    @staticmethod
    def from_gram(m: SymMatrix) -> "PseudoSimplex":
        """Inverse of `gram(base=0)`: vertex 0 at the base point, vertices
        1..n carrying the matrix rows."""
        n = m.order
        squared = {}
        for i in range(1, n + 1):
            squared[0, i] = m[i - 1, i - 1]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                squared[i, j] = m[i - 1, i - 1] + m[j - 1, j - 1] - 2 * m[i - 1, j - 1]
        return PseudoSimplex.from_squared_edges(n, squared)

    def edge(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i > j:
            i, j = j, i
        if not (0 <= i and j <= self.n):
            raise MissingEdge(f"vertex pair ({i},{j}) out of range")
        idx = i * self.n - i * (i - 1) // 2 + (j - i - 1)
        return self.edges[idx]

    def add(self, other: "PseudoSimplex") -> "PseudoSimplex":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return PseudoSimplex(self.n, tuple(a + b for a, b in zip(self.edges, other.edges)))

    def scale(self, factor) -> "PseudoSimplex":
        f = as_fraction(factor)
        return PseudoSimplex(self.n, tuple(f * e for e in self.edges))

    def __add__(self, other: "PseudoSimplex") -> "PseudoSimplex":
        return self.add(other)

    def gram(self, base: int = 0) -> SymMatrix:
        """Gram matrix of the edge vectors from `base`, in vertex label order.

        Entry (i, j) is (e(base,i) + e(base,j) - e(i,j)) / 2 over the non-base
        vertices, using squared lengths e only.
        """
        if not 0 <= base <= self.n:
            raise MissingEdge(f"base vertex {base} out of range")
        others = [v for v in range(self.n + 1) if v != base]

        def entry(i, j):
            vi, vj = others[i], others[j]
            return (self.edge(base, vi) + self.edge(base, vj) - self.edge(vi, vj)) / 2

        return SymMatrix.from_function(self.n, entry)

    def face(self, subset: Sequence[int]) -> "PseudoSimplex":
        """Sub-simplex on the given vertices, relabeled 0..k in sorted order."""
        vs = sorted(set(subset))
        if len(vs) < 2:
            raise SubsetTooSmall("a face needs at least 2 vertices")
        if vs[0] < 0 or vs[-1] > self.n:
            raise MissingEdge(f"vertices {vs} out of range")
        k = len(vs) - 1
        squared = {
            (a, b): self.edge(vs[a], vs[b]) for a in range(k + 1) for b in range(a + 1, k + 1)
        }
        return PseudoSimplex.from_squared_edges(k, squared)

    def signed_sq_volume(self, base: int = 0) -> SignedSquaredVolume:
        """det(gram)/(k!)^2; independent of the base vertex."""
        g = self.gram(base)
        return SignedSquaredVolume(det(g) / math.factorial(self.n) ** 2, self.n)

    def cayley_menger_sq_volume(self) -> SignedSquaredVolume:
        """Signed squared volume through the bordered Cayley-Menger determinant.

        Independent oracle for `signed_sq_volume`: a (k+2) x (k+2) determinant
        in squared distances with the (-1)^(k+1) / (2^k (k!)^2) normalization.
        """
        k = self.n
        size = k + 2
        rows = [[Fraction(0)] * size for _ in range(size)]
        for c in range(1, size):
            rows[0][c] = Fraction(1)
            rows[c][0] = Fraction(1)
        for i in range(k + 1):
            for j in range(k + 1):
                rows[i + 1][j + 1] = self.edge(i, j) if i != j else Fraction(0)
        cm = det_rows(rows)
        norm = Fraction((-1) ** (k + 1), 2**k * math.factorial(k) ** 2)
        return SignedSquaredVolume(norm * cm, k)

    def relabel(self, perm: Sequence[int]) -> "PseudoSimplex":
        """Apply a vertex permutation: new vertex v was old vertex perm[v]."""
        if sorted(perm) != list(range(self.n + 1)):
            raise ValueError("not a permutation of the vertices")
        squared = {
            (i, j): self.edge(perm[i], perm[j]) for i, j in _pairs(self.n)
        }
        return PseudoSimplex.from_squared_edges(self.n, squared)

    # -- JSON wire format ---------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "squared_edges": [[i, j, frac_str(self.edge(i, j))] for i, j in _pairs(self.n)],
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "PseudoSimplex":
        payload = json.loads(text)
        squared = {(int(i), int(j)): parse_frac(v) for i, j, v in payload["squared_edges"]}
        return PseudoSimplex.from_squared_edges(int(payload["n"]), squared)


def add(p1: PseudoSimplex, p2: PseudoSimplex) -> PseudoSimplex:
    return p1.add(p2)


def scale(factor, p: PseudoSimplex) -> PseudoSimplex:
    return p.scale(factor)
