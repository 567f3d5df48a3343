"""Seeded search for positive-semidefinite sums of degenerate components.

The degenerate set D (symmetric, all-ones kernel, every order-2 principal
minor zero) is parameterized by sign matrices: every member factors as
diag(d) C diag(d) with C symmetric, unit diagonal, entries +-1, and d chosen
so the all-ones vector stays in the kernel. The search samples pairs (A, B)
from these strata and classifies A + B exactly:

* ``IN_F0``     positive semidefinite of rank n (a Euclidean hit);
* ``NEAR_MISS`` strict symmetric membership with at most one negative pivot;
* ``REJECT``    everything else.

All classification is exact rational; floats appear only in the reported
margin. Runs are reproducible: identical (n, samples, seed) give identical
hit lists.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from .exactmat import (
    SymMatrix,
    leading_principal_minors,
    null_space,
    rank,
    signature,
)
from .families import membership_D, membership_U0


class TooLarge(ValueError):
    """Sign-matrix enumeration is capped at n <= 7 (2^(n(n+1)/2) blowup)."""


@dataclass(frozen=True)
class SignMatrix:
    """Symmetric matrix with unit diagonal and +-1 entries; only the strict
    upper triangle is stored, encoded 0 for +1 and 1 for -1."""

    order: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.order * (self.order - 1) // 2:
            raise ValueError("wrong number of strict upper-triangle entries")

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return 1
        if i > j:
            i, j = j, i
        idx = i * self.order - i * (i + 1) // 2 + (j - i - 1)
        return -1 if self.bits[idx] else 1

    def to_symmatrix(self) -> SymMatrix:
        return SymMatrix.from_function(
            self.order, lambda i, j: Fraction(self.entry(i, j))
        )


def _pair_index_permutations(order: int) -> list[list[int]]:
    """For every vertex permutation, the induced permutation of the strict
    upper-triangle pair positions."""
    pairs = list(itertools.combinations(range(order), 2))
    pos = {p: k for k, p in enumerate(pairs)}
    out = []
    for perm in itertools.permutations(range(order)):
        out.append([pos[tuple(sorted((perm[i], perm[j])))] for i, j in pairs])
    return out


def _enumerate_small(order: int) -> Iterator[SignMatrix]:
    """Vectorized orbit-minimum dedup: pack each candidate and each permuted
    image into an integer and keep candidates equal to their orbit minimum."""
    k = order * (order - 1) // 2
    masks = np.arange(2**k, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(k - 1, -1, -1)) & 1
    best = masks.copy()
    weights = 2 ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for pidx in _pair_index_permutations(order):
        w = np.zeros(k, dtype=np.int64)
        for position, source in enumerate(pidx):
            w[source] = weights[position]
        np.minimum(best, bits @ w, out=best)
    for mask in masks[best == masks]:
        bit_tuple = tuple(int(b) for b in bits[mask])
        yield SignMatrix(order, bit_tuple)


def _enumerate_streaming(order: int) -> Iterator[SignMatrix]:
    """Per-candidate canonical test with early exit; exponential, used only
    beyond the vectorized range."""
    k = order * (order - 1) // 2
    perms = _pair_index_permutations(order)[1:]
    for mask in range(2**k):
        bits = tuple((mask >> (k - 1 - i)) & 1 for i in range(k))
        canonical = True
        for pidx in perms:
            for position in range(k):
                mapped = bits[pidx[position]]
                if mapped < bits[position]:
                    canonical = False
                    break
                if mapped > bits[position]:
                    break
            if not canonical:
                break
        if canonical:
            yield SignMatrix(order, bits)


def enumerate_H(n: int) -> Iterator[SignMatrix]:
    """All (n+1) x (n+1) sign matrices up to simultaneous row/column
    permutation, in increasing packed-bit order (all-ones first)."""
    if n > 7:
        raise TooLarge("enumeration is guarded at n <= 7")
    order = n + 1
    if order <= 6:
        yield from _enumerate_small(order)
    else:
        yield from _enumerate_streaming(order)


# -- strata of the degenerate set ------------------------------------------------


@dataclass(frozen=True)
class DStratum:
    """A rational parameterization of degenerate members for one sign matrix:
    d ranges over the span of `basis` (with a forced 0 at `zero_index` when
    set), and A = diag(d) C diag(d)."""

    sign_matrix: SignMatrix
    zero_index: Optional[int]
    basis: tuple[tuple[Fraction, ...], ...]


def d_members_from(c: SignMatrix) -> list[DStratum]:
    """All strata of degenerate members writable as diag(d) C diag(d).

    The all-ones kernel condition forces (C d)_i = 0 wherever d_i != 0, so
    the all-nonzero stratum is the kernel of C itself, and each single-zero
    stratum (at most one zero is useful downstream) is the kernel of the
    principal submatrix omitting that position, embedded with a 0 there.
    """
    full = c.to_symmatrix()
    strata: list[DStratum] = []
    basis = null_space(full)
    if basis:
        strata.append(DStratum(c, None, tuple(basis)))
    order = c.order
    for omit in range(order):
        keep = [i for i in range(order) if i != omit]
        sub = full.submatrix(keep)
        sub_basis = null_space(sub)
        if not sub_basis:
            continue
        embedded = []
        for vec in sub_basis:
            v = list(vec)
            v.insert(omit, Fraction(0))
            embedded.append(tuple(v))
        strata.append(DStratum(c, omit, tuple(embedded)))
    return strata


def member_from_coefficients(
    stratum: DStratum, coefficients: Sequence[Fraction]
) -> Optional[SymMatrix]:
    """Assemble diag(d) C diag(d) for d = sum(coeff * basis vector).

    Returns None when the zero pattern is wrong (a forced-nonzero entry
    vanished), so callers can redraw.
    """
    if len(coefficients) != len(stratum.basis):
        raise ValueError("one coefficient per basis vector")
    order = stratum.sign_matrix.order
    d = [Fraction(0)] * order
    for coeff, vec in zip(coefficients, stratum.basis):
        coeff = Fraction(coeff)
        for i, x in enumerate(vec):
            d[i] += coeff * x
    for i, x in enumerate(d):
        if i == stratum.zero_index:
            if x != 0:
                raise AssertionError("stratum embedding broke the forced zero")
        elif x == 0:
            return None
    c = stratum.sign_matrix
    return SymMatrix.from_function(order, lambda i, j: d[i] * d[j] * c.entry(i, j))


# -- classification ---------------------------------------------------------------


def is_psd(m: SymMatrix) -> bool:
    """Exact positive-semidefiniteness: congruence diagonalization yields no
    negative pivots."""
    return signature(m).negative == 0


IN_F0 = "IN_F0"
NEAR_MISS = "NEAR_MISS"
REJECT = "REJECT"


@dataclass(frozen=True)
class SearchHit:
    A: SymMatrix
    B: SymMatrix
    classification: str
    margin: float


def classify_sum(a: SymMatrix, b: SymMatrix, n: int) -> tuple[str, float]:
    u = a.add(b)
    leading = leading_principal_minors(u)[:n]
    margin = min(float(x) for x in leading)
    if is_psd(u) and rank(u) == n:
        return IN_F0, margin
    if signature(u).negative <= 1 and membership_U0(u):
        return NEAR_MISS, margin
    return REJECT, margin


# -- sampling ----------------------------------------------------------------------


def _random_sign_matrix(rng: random.Random, order: int) -> SignMatrix:
    k = order * (order - 1) // 2
    return SignMatrix(order, tuple(rng.randint(0, 1) for _ in range(k)))


def _strata_pool(n: int, rng: random.Random, sampled_pool_size: int = 64) -> list[DStratum]:
    """Strata to sample from: exhaustive over enumerated sign-matrix classes
    for n <= 5, over a seeded random pool of sign matrices beyond that."""
    strata: list[DStratum] = []
    if n <= 5:
        for c in enumerate_H(n):
            strata.extend(d_members_from(c))
    else:
        for _ in range(sampled_pool_size):
            strata.extend(d_members_from(_random_sign_matrix(rng, n + 1)))
    return strata


def _draw_member(rng: random.Random, strata: list[DStratum]) -> SymMatrix:
    for _ in range(1000):
        stratum = strata[rng.randrange(len(strata))]
        coeffs = [
            Fraction(rng.choice([x for x in range(-20, 21) if x != 0]))
            for _ in stratum.basis
        ]
        member = member_from_coefficients(stratum, coeffs)
        if member is not None:
            return member
    raise RuntimeError("could not draw a valid degenerate member")


def sample_and_test(
    n: int, samples: int, seed: int, start: int = 0
) -> list[SearchHit]:
    """Deterministic seeded sampling of pairs from the degenerate strata.

    Pairs failing the rank precondition max(rank A, rank B) >= ceil(n/2)
    (necessary for rank(A+B) = n by subadditivity) are classified REJECT
    without the expensive checks. `start` skips that many leading samples
    while consuming the identical random stream, for resumable runs.
    """
    if n < 4:
        raise ValueError("search needs n >= 4")
    rng = random.Random(seed)
    strata = _strata_pool(n, rng)
    if not strata:
        raise RuntimeError("no degenerate strata available")
    min_rank = math.ceil(n / 2)
    hits: list[SearchHit] = []
    for index in range(start + samples):
        a = _draw_member(rng, strata)
        b = _draw_member(rng, strata)
        if index < start:
            continue
        if max(rank(a), rank(b)) < min_rank:
            hits.append(SearchHit(a, b, REJECT, float("-inf")))
            continue
        classification, margin = classify_sum(a, b, n)
        hits.append(SearchHit(a, b, classification, margin))
    return hits


def probe_rank_conjecture(samples: int, seed: int) -> list[SymMatrix]:
    """Sample degenerate members for n = 4 and return any of rank >= 2.

    Every sampled member is also asserted to be in the degenerate set. A
    nonempty return is a finding to surface, not an error.
    """
    rng = random.Random(seed)
    strata = _strata_pool(4, rng)
    violations: list[SymMatrix] = []
    for _ in range(samples):
        member = _draw_member(rng, strata)
        if not membership_D(member):
            raise AssertionError(f"stratum produced a non-degenerate member: {member}")
        if not member.is_zero() and rank(member) >= 2:
            violations.append(member)
    return violations


# -- persistence --------------------------------------------------------------------


def hits_to_jsonable(hits: Sequence[SearchHit]) -> list[dict]:
    from .exactmat import frac_str

    out = []
    for h in hits:
        out.append(
            {
                "classification": h.classification,
                "margin": f"{h.margin:.17g}",
                "A": [[frac_str(x) for x in row] for row in h.A.rows()],
                "B": [[frac_str(x) for x in row] for row in h.B.rows()],
            }
        )
    return out


class SearchLog:
    """Append-only JSON-lines log of search runs.

    One record per classification transition plus a summary carrying the
    resumable cursor (n, seed, next_sample_index).
    """

    def __init__(self, path):
        self.path = Path(path)

    def append_run(
        self, n: int, seed: int, hits: Sequence[SearchHit], start: int = 0
    ) -> dict:
        counts = {IN_F0: 0, NEAR_MISS: 0, REJECT: 0}
        records = []
        previous = None
        for offset, hit in enumerate(hits):
            counts[hit.classification] += 1
            if hit.classification != previous:
                records.append(
                    {
                        "type": "transition",
                        "n": n,
                        "seed": seed,
                        "sample_index": start + offset,
                        "classification": hit.classification,
                        "margin": f"{hit.margin:.17g}",
                    }
                )
                previous = hit.classification
        summary = {
            "type": "summary",
            "n": n,
            "seed": seed,
            "counts": counts,
            "cursor": {"n": n, "seed": seed, "next_sample_index": start + len(hits)},
        }
        records.append(summary)
        with self.path.open("a", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
        return summary

    def last_cursor(self) -> Optional[dict]:
        if not self.path.exists():
            return None
        cursor = None
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                if record.get("type") == "summary":
                    cursor = record.get("cursor")
        return cursor
