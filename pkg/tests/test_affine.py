from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from symdeg.affine import (AffinePerm, AffineRoot, bruhat_leq, dl_basis_check, length_identity_check,
                           length, length_by_word, random_element, reduced_word, reflection,
                           sigma_m_hat, sigma_n_hat, sigma_hat, simple)
from symdeg.errors import NotStronglyOrthogonal


def elements(max_n: int = 5, max_steps: int = 12):
    return st.tuples(st.integers(2, max_n), st.integers(0, 10**6), st.integers(0, max_steps)).map(
        lambda t: random_element(t[0], random.Random(t[1]), t[2]))


def word_product(n: int, word) -> AffinePerm:
    w = AffinePerm.identity(n)
    for i in word:
        w = w * simple(n, i)
    return w


def bruhat_by_subwords(v: AffinePerm, w: AffinePerm) -> bool:
    """Subword property: v <= w iff v is a subword product of a reduced word for w."""
    word = reduced_word(w)
    for mask in itertools.product((0, 1), repeat=len(word)):
        if word_product(w.n, [i for i, b in zip(word, mask) if b]) == v:
            return True
    return False


@given(elements())
def test_length_formula_matches_reduced_words(w):
    assert length(w) == length_by_word(w)
    assert word_product(w.n, reduced_word(w)) == w


@given(elements())
def test_inverse_has_same_length(w):
    assert length(w.inverse()) == length(w)


@given(elements(), st.integers(0, 4))
def test_simple_reflection_changes_length_by_one(w, i):
    i %= w.n
    diff = length(w.times_simple(i)) - length(w)
    assert diff == (-1 if w.has_right_descent(i) else 1)


@given(elements(4, 7), elements(4, 7))
def test_bruhat_matches_subword_oracle(v, w):
    if v.n != w.n:
        return
    assert bruhat_leq(v, w) == bruhat_by_subwords(v, w)


@given(elements())
def test_bruhat_reflexive_and_graded(w):
    assert bruhat_leq(w, w)
    assert bruhat_leq(AffinePerm.identity(w.n), w)
    for i in w.right_descents():
        assert bruhat_leq(w.times_simple(i), w)


def test_finite_permutation_length_is_inversion_count():
    for perm in itertools.permutations(range(1, 5)):
        inv = sum(1 for i, j in itertools.combinations(range(4), 2) if perm[i] > perm[j])
        assert length(AffinePerm(4, perm)) == inv


def test_window_validation():
    with pytest.raises(ValueError):
        AffinePerm(3, (1, 2, 2))
    with pytest.raises(ValueError):
        AffinePerm(3, (1, 2, 6))


def test_reflection_is_an_involution():
    r = reflection(AffineRoot(1, 3, -1), 4)
    assert (r * r).is_identity()
    assert length(r) % 2 == 1


def test_non_commuting_reflections_rejected():
    with pytest.raises(NotStronglyOrthogonal):
        sigma_hat([AffineRoot(1, 2, 0), AffineRoot(2, 3, 0)], 3)


@pytest.mark.parametrize("l", [4, 5, 6])
def test_lengths_and_bruhat(l):
    rep = length_identity_check(l)
    assert rep["ok"]
    assert length(sigma_m_hat(l)) == 12 * (l - 1)
    assert length(sigma_n_hat(l)) == 12 * (l - 1) - 2


@pytest.mark.parametrize("l", [3, 4, 5, 6])
def test_dl_basis(l):
    assert dl_basis_check(l)
