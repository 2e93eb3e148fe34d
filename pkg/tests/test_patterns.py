from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symdeg.errors import NotAPatternProfile
from symdeg.forms import random_borel
from symdeg.patterns import (LinkPattern, RankProfile, corner_ranks, delta_on_pattern,
                             enumerate_patterns, is_delta_symmetric, pattern_count,
                             pattern_from_profile, pattern_profile, pattern_to_matrix)


def brute_force_square_zero_partial_permutations(n: int) -> int:
    """Count 0/1 matrices with at most one 1 per row and column and X^2 = 0."""
    count = 0
    for k in range(n + 1):
        for cols in itertools.combinations(range(n), k):
            for rows in itertools.permutations(range(n), k):
                x = np.zeros((n, n), dtype=int)
                for c, r in zip(cols, rows):
                    x[r, c] = 1
                if not (x @ x).any():
                    count += 1
    return count


@pytest.mark.parametrize("n,expected", [(2, 3), (3, 7), (4, 25), (5, 81), (6, 331)])
def test_pattern_counts(n, expected):
    assert len(enumerate_patterns(n)) == expected == pattern_count(n)
    assert brute_force_square_zero_partial_permutations(n) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_profile_round_trip(n):
    for p in enumerate_patterns(n):
        assert pattern_from_profile(pattern_profile(p)) == p


@pytest.mark.parametrize("n", range(1, 6))
def test_combinatorial_profile_equals_matrix_ranks(n):
    for p in enumerate_patterns(n):
        assert corner_ranks(pattern_to_matrix(p)) == pattern_profile(p)
        assert pattern_profile(p).is_valid()


def test_parse_and_str():
    p = LinkPattern.parse(4, "1->3,2->4")
    assert str(p) == "1->3,2->4"
    assert str(LinkPattern.parse(3, "empty")) == "empty"
    with pytest.raises(ValueError):
        LinkPattern(3, ((1, 2), (2, 3)))


def test_delta_on_pattern():
    # i* = n + 1 - i and arcs reverse: s -> t becomes t* -> s*
    p = LinkPattern.parse(4, "1->3")
    assert str(delta_on_pattern(p)) == "2->4"
    assert is_delta_symmetric(LinkPattern.parse(4, "1->3,2->4"))


def test_non_pattern_profile_rejected():
    bad = RankProfile(2, ((2, 2), (1, 1)))
    with pytest.raises(NotAPatternProfile):
        pattern_from_profile(bad)


@given(st.integers(2, 6).flatmap(lambda n: st.sampled_from(enumerate_patterns(n))),
       st.integers(0, 10**6))
def test_corner_ranks_are_borel_invariant(p, seed):
    b = random_borel(p.n, random.Random(seed))
    a = pattern_to_matrix(p)
    assert corner_ranks(b @ a @ b.inverse()) == pattern_profile(p)


@given(st.integers(2, 6).flatmap(lambda n: st.sampled_from(enumerate_patterns(n))))
def test_pattern_matrices_are_square_zero(p):
    a = pattern_to_matrix(p)
    assert (a @ a).is_zero()
