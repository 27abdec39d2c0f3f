"""Tests for weight tuples: well-formedness, normalization, singular strata."""

import random
from itertools import combinations, product
from math import gcd

import pytest

from wcikit import (
    NormalizationStep,
    Stratum,
    Weights,
    is_well_formed_space,
    singular_strata,
    well_form,
)


def brute_force_singular_subsets(entries):
    """Independent oracle: all nonempty index subsets whose weights share a divisor."""
    out = set()
    for size in range(1, len(entries) + 1):
        for idx in combinations(range(len(entries)), size):
            if gcd(*(entries[i] for i in idx)) > 1:
                out.add(idx)
    return out


def brute_force_maximal_family(entries):
    """Independent oracle for the covering family: trial-division primes."""
    family = {}
    for a in entries:
        n, p = a, 2
        while p * p <= n:
            if n % p == 0:
                idx = tuple(i for i, b in enumerate(entries) if b % p == 0)
                family[idx] = gcd(*(entries[i] for i in idx))
                while n % p == 0:
                    n //= p
            p += 1
        if n > 1:
            idx = tuple(i for i, b in enumerate(entries) if b % n == 0)
            family[idx] = gcd(*(entries[i] for i in idx))
    return family


class TestWeightsType:
    def test_parse_print_roundtrip(self):
        w = Weights.parse("1,1,2,2,2")
        assert w.entries == (1, 1, 2, 2, 2)
        assert str(w) == "1,1,2,2,2"
        assert Weights.parse(str(w)) == w

    def test_parse_with_spaces(self):
        assert Weights.parse(" 2, 3 ,5 ").entries == (2, 3, 5)

    def test_parse_rejects_junk(self):
        with pytest.raises(ValueError):
            Weights.parse("1,x,3")
        with pytest.raises(ValueError):
            Weights.parse("")

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            Weights((1, 0, 2))
        with pytest.raises(ValueError):
            Weights((1, -3))

    def test_rejects_over_cap(self):
        Weights((1, 2**63 - 1))  # at the cap is fine
        with pytest.raises(ValueError):
            Weights((1, 2**63))

    def test_dim(self):
        assert Weights((1, 1, 2)).dim == 2


class TestWellFormedSpace:
    def test_examples(self):
        assert is_well_formed_space((1, 1, 2, 2, 2)) is True
        assert is_well_formed_space((1, 2, 2)) is False
        assert is_well_formed_space((2, 3, 5)) is True

    def test_straight_projective_space(self):
        assert is_well_formed_space((1, 1, 1, 1))

    def test_every_index_checked(self):
        # The offending complement moves through every position, including 0.
        assert not is_well_formed_space((3, 2, 2))
        assert not is_well_formed_space((2, 3, 2))
        assert not is_well_formed_space((2, 2, 3))
        assert is_well_formed_space((1, 6, 10, 15))

    def test_needs_two_coordinates(self):
        with pytest.raises(ValueError):
            is_well_formed_space((5,))


class TestWellForm:
    def test_identity_case(self):
        result, trace = well_form((1, 1, 1))
        assert result.entries == (1, 1, 1)
        assert trace.steps == ()

    def test_scaling_isomorphism_example(self):
        result, trace = well_form((1, 2, 2))
        assert result.entries == (1, 1, 1)
        assert [s.kind for s in trace.steps] == ["excluded-index"]
        assert trace.steps[0].index == 0 and trace.steps[0].divisor == 2

    def test_overall_gcd_example(self):
        result, trace = well_form((4, 6, 10))
        assert result.entries == (2, 3, 5)
        assert [s.kind for s in trace.steps] == ["overall-gcd"]

    def test_hand_derived_example(self):
        # One excluded-index step at index 1 with divisor 2.
        result, trace = well_form((2, 3, 4))
        assert result.entries == (1, 3, 2)
        assert is_well_formed_space(result)

    def test_order_preserved_not_sorted(self):
        # (2,3,4) normalizes to (1,3,2): positions stay put, no sorting.
        assert well_form((2, 3, 4))[0].entries == (1, 3, 2)
        assert well_form((10, 6, 4))[0].entries == (5, 3, 2)

    def test_trace_replays(self):
        for w in [(1, 2, 2), (4, 6, 10), (2, 3, 4), (12, 18, 10), (8, 12, 20, 6)]:
            result, trace = well_form(w)
            assert trace.replay(w) == result
            assert trace.result == result
            assert all(s.divisor > 1 for s in trace.steps)

    def test_idempotent_small_exhaustive(self):
        for length in range(2, 5):
            for w in product(range(1, 9), repeat=length):
                result, _ = well_form(w)
                assert is_well_formed_space(result)
                again, trace = well_form(result)
                assert again == result
                assert trace.steps == ()

    def test_step_validation(self):
        with pytest.raises(ValueError):
            NormalizationStep("overall-gcd", 1)
        with pytest.raises(ValueError):
            NormalizationStep("excluded-index", 2)  # missing index
        with pytest.raises(ValueError):
            NormalizationStep("bogus", 2)


class TestStratum:
    def test_of_computes_delta(self):
        s = Stratum.of((1, 1, 2, 2, 2), (2, 3, 4))
        assert s.delta == 2 and s.dim == 2 and s.is_singular

    def test_sorted_and_distinct(self):
        s = Stratum.of((1, 2, 3), (2, 1))
        assert s.indices == (1, 2) and s.delta == 1 and not s.is_singular

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            Stratum.of((1, 2, 3), (5,))

    def test_json(self):
        assert Stratum.of((1, 1, 2), (2,)).to_json() == {"indices": [2], "delta": 2, "dim": 0}


class TestSingularStrata:
    def test_example_surface(self):
        strata = singular_strata((1, 1, 2, 2, 2))
        assert [s.to_json() for s in strata] == [{"indices": [2, 3, 4], "delta": 2, "dim": 2}]

    def test_smooth_space(self):
        assert singular_strata((1, 1, 1, 1)) == []

    def test_point_strata(self):
        strata = singular_strata((1, 2, 3))
        assert [(s.indices, s.delta, s.dim) for s in strata] == [((1,), 2, 0), ((2,), 3, 0)]

    def test_merged_composite_delta(self):
        # Primes 2 and 3 share the divisibility pattern, so one stratum with delta 6.
        strata = singular_strata((1, 1, 6, 6))
        assert [(s.indices, s.delta) for s in strata] == [((2, 3), 6)]

    def test_three_pairwise_patterns(self):
        strata = singular_strata((1, 6, 10, 15))
        assert [(s.indices, s.delta) for s in strata] == [
            ((1, 2), 2),
            ((1, 3), 3),
            ((2, 3), 5),
        ]

    def test_rejects_non_well_formed(self):
        with pytest.raises(ValueError):
            singular_strata((1, 2, 2))

    def test_all_subsets_mode_matches_brute_force(self):
        for w in [(1, 2, 3), (1, 1, 2, 2, 2), (1, 6, 10, 15), (2, 3, 5), (1, 1, 4, 6)]:
            got = {s.indices for s in singular_strata(w, maximal_only=False)}
            assert got == brute_force_singular_subsets(w)

    def test_all_subsets_max_size(self):
        got = singular_strata((1, 1, 2, 2, 2), maximal_only=False, max_size=1)
        assert all(s.dim == 0 for s in got) and len(got) == 3

    def test_maximal_family_matches_prime_oracle(self):
        rng = random.Random(20240811)
        cases = [tuple(rng.randrange(1, 31) for _ in range(rng.randrange(2, 7))) for _ in range(400)]
        cases += [w for w in product(range(1, 9), repeat=3)]
        for w in cases:
            if not is_well_formed_space(w):
                continue
            got = {s.indices: s.delta for s in singular_strata(w)}
            assert got == brute_force_maximal_family(w), w

    def test_union_property(self):
        # Every singular subset is contained in some covering-family stratum.
        rng = random.Random(7)
        cases = [tuple(rng.randrange(1, 31) for _ in range(rng.randrange(2, 7))) for _ in range(200)]
        cases += list(product(range(1, 13), repeat=4))
        for w in cases:
            if not is_well_formed_space(w):
                continue
            maximal = [set(s.indices) for s in singular_strata(w)]
            for idx in brute_force_singular_subsets(w):
                assert any(set(idx) <= big for big in maximal), (w, idx)

    def test_no_stratum_omits_single_coordinate(self):
        # Well-formedness forbids a singular subset of all-but-one coordinates.
        for w in product(range(1, 13), repeat=4):
            if not is_well_formed_space(w):
                continue
            for s in singular_strata(w, maximal_only=False):
                assert len(s.indices) <= len(w) - 2, (w, s.indices)

    def test_sort_order(self):
        strata = singular_strata((1, 6, 10, 15), maximal_only=False)
        keys = [(-s.dim, s.indices) for s in strata]
        assert keys == sorted(keys)
