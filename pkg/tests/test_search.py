"""Search tests: enumeration orbit counts, degenerate strata, exact
classification, determinism, and the log format."""

import json
import math
import random
from fractions import Fraction

import pytest

from flexiplex.exactmat import SymMatrix, rank, signature
from flexiplex.families import build_family, membership_D
from flexiplex.search import (
    IN_F0,
    NEAR_MISS,
    REJECT,
    DStratum,
    SearchLog,
    SignMatrix,
    TooLarge,
    classify_sum,
    d_members_from,
    enumerate_H,
    hits_to_jsonable,
    is_psd,
    member_from_coefficients,
    probe_rank_conjecture,
    sample_and_test,
)


def brute_force_class_count(order):
    """Independent orbit count: group masks by their full orbit minimum."""
    import itertools

    pairs = list(itertools.combinations(range(order), 2))
    k = len(pairs)
    reps = set()
    for mask in range(2**k):
        bits = tuple((mask >> (k - 1 - i)) & 1 for i in range(k))
        orbit_min = min(
            tuple(bits[pairs.index(tuple(sorted((p[i], p[j]))))] for i, j in pairs)
            for p in itertools.permutations(range(order))
        )
        reps.add(orbit_min)
    return len(reps)


class TestEnumerateH:
    def test_n1_two_classes(self):
        out = list(enumerate_H(1))
        assert len(out) == 2
        assert out[0].entry(0, 1) == 1  # all-ones first
        assert out[1].entry(0, 1) == -1

    def test_n2_four_classes(self):
        # 8 raw sign choices on 3 vertices collapse to the 4 graphs on 3
        # nodes (0..3 edges of the -1 graph)
        out = list(enumerate_H(2))
        assert len(out) == 4

    def test_n3_matches_brute_force(self):
        assert len(list(enumerate_H(3))) == brute_force_class_count(4)

    def test_all_ones_present_and_first(self):
        for n in (1, 2, 3, 4):
            first = next(iter(enumerate_H(n)))
            assert all(
                first.entry(i, j) == 1 for i in range(n + 1) for j in range(n + 1)
            )

    def test_streaming_agrees_with_vectorized(self):
        from flexiplex.search import _enumerate_small, _enumerate_streaming

        small = [m.bits for m in _enumerate_small(4)]
        streamed = [m.bits for m in _enumerate_streaming(4)]
        assert small == streamed

    def test_guard(self):
        with pytest.raises(TooLarge):
            list(enumerate_H(8))


class TestDStrata:
    def test_all_ones_gives_rank1_family(self):
        all_ones = SignMatrix(5, tuple([0] * 10))
        strata = d_members_from(all_ones)
        full = [s for s in strata if s.zero_index is None]
        assert len(full) == 1
        # kernel of the all-ones matrix: zero-sum vectors, dimension 4
        assert len(full[0].basis) == 4
        member = member_from_coefficients(full[0], [1, 2, 3, 4])
        assert member is not None
        assert membership_D(member)
        assert rank(member) == 1

    def test_block_matrix_stratum(self):
        fam = build_family(5, seed=1)
        # reconstruct the sign matrix underlying A and check its stratum
        c = SignMatrix(
            6,
            tuple(
                0 if i // 2 == j // 2 else 1
                for i in range(6)
                for j in range(i + 1, 6)
            ),
        )
        strata = d_members_from(c)
        full = [s for s in strata if s.zero_index is None]
        assert len(full[0].basis) == 3
        member = member_from_coefficients(full[0], [2, 3, 5])
        assert member is not None and membership_D(member)
        assert rank(member) == 3

    def test_trivial_kernel_gives_no_full_stratum(self):
        identity_like = SignMatrix(3, (1, 0, 1))  # entries -1,+1,-1
        m = identity_like.to_symmatrix()
        from flexiplex.exactmat import det

        if det(m) != 0:
            assert all(
                s.zero_index is not None for s in d_members_from(identity_like)
            )

    def test_every_emitted_member_in_D(self):
        rng = random.Random(0)
        for c in list(enumerate_H(3)):
            for stratum in d_members_from(c):
                coeffs = [rng.randint(1, 9) for _ in stratum.basis]
                member = member_from_coefficients(stratum, coeffs)
                if member is not None:
                    assert membership_D(member)


class TestClassification:
    def test_is_psd(self):
        assert is_psd(SymMatrix.diagonal([1, 0]))
        assert not is_psd(SymMatrix.diagonal([1, Fraction(-1, 1000)]))

    def test_is_psd_agrees_with_signature(self):
        rng = random.Random(4)
        for _ in range(50):
            m = SymMatrix.from_function(
                4, lambda i, j: Fraction(rng.randint(-5, 5))
            )
            assert is_psd(m) == (signature(m).negative == 0)

    def test_matrix_family_sum_is_indefinite(self):
        fam = build_family(5, seed=1)
        u = fam.A.add(fam.B)
        assert not is_psd(u)
        classification, margin = classify_sum(fam.A, fam.B, 5)
        assert classification == NEAR_MISS
        assert margin < 0

    def test_rank_subadditivity_filter_sound(self):
        rng = random.Random(6)
        for _ in range(30):
            a = SymMatrix.from_function(4, lambda i, j: Fraction(rng.randint(-3, 3)))
            b = SymMatrix.from_function(4, lambda i, j: Fraction(rng.randint(-3, 3)))
            assert rank(a.add(b)) <= rank(a) + rank(b)


class TestSampling:
    def test_deterministic(self):
        first = sample_and_test(4, 50, seed=7)
        second = sample_and_test(4, 50, seed=7)
        assert hits_to_jsonable(first) == hits_to_jsonable(second)

    def test_start_skips_consistently(self):
        full = sample_and_test(4, 30, seed=3)
        tail = sample_and_test(4, 10, seed=3, start=20)
        assert hits_to_jsonable(full[20:]) == hits_to_jsonable(tail)

    def test_classifications_consistent(self):
        for hit in sample_and_test(4, 40, seed=1):
            u = hit.A.add(hit.B)
            if hit.classification == IN_F0:
                assert is_psd(u) and rank(u) == 4
            elif hit.classification == NEAR_MISS:
                assert signature(u).negative == 1

    def test_n5_runs(self):
        hits = sample_and_test(5, 10, seed=2)
        assert len(hits) == 10


class TestRankConjectureProbe:
    def test_no_violations_in_small_run(self):
        violations = probe_rank_conjecture(300, seed=1)
        assert violations == []


class TestSearchLog:
    def test_append_and_cursor(self, tmp_path):
        log = SearchLog(tmp_path / "search.jsonl")
        hits = sample_and_test(4, 25, seed=5)
        summary = log.append_run(4, 5, hits)
        assert sum(summary["counts"].values()) == 25
        cursor = log.last_cursor()
        assert cursor == {"n": 4, "seed": 5, "next_sample_index": 25}
        more = sample_and_test(4, 5, seed=5, start=25)
        log.append_run(4, 5, more, start=25)
        assert log.last_cursor()["next_sample_index"] == 30
        lines = (tmp_path / "search.jsonl").read_text().strip().split("\n")
        assert all(json.loads(line) for line in lines)
