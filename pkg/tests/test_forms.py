from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from symdeg.errors import OddN, OddSymplectic
from symdeg.exact import QMatrix
from symdeg.forms import (bilinear, delta, gram_matrix, is_delta_fixed, lie_basis, nilpotent_exp,
                          pll_star, random_borel_eps, star, star_by_product)
from strategies import int_matrix

FORMS = [(n, e) for n in range(1, 7) for e in (1, -1) if not (e == -1 and n % 2)]


def form_and_matrix():
    return st.sampled_from(FORMS).flatmap(
        lambda ne: st.tuples(st.just(gram_matrix(*ne)), int_matrix(ne[0], ne[0])))


def test_gram_examples():
    assert gram_matrix(2, 1).gram == QMatrix.from_rows([[0, 1], [1, 0]])
    assert gram_matrix(4, -1).gram == QMatrix.from_rows(
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    with pytest.raises(OddSymplectic):
        gram_matrix(3, -1)


@pytest.mark.parametrize("n,eps", FORMS)
def test_form_symmetry(n, eps):
    f = gram_matrix(n, eps)
    assert f.gram.T == f.gram * eps


@given(form_and_matrix())
def test_star_table_matches_matrix_product(fa):
    form, a = fa
    assert star(a, form) == star_by_product(a, form)


@given(form_and_matrix())
def test_star_is_an_involution(fa):
    form, a = fa
    assert star(star(a, form), form) == a


@given(form_and_matrix())
def test_star_is_the_adjoint(fa):
    form, a = fa
    n = form.n
    rng = random.Random(str(a.entries))
    v = [rng.randint(-3, 3) for _ in range(n)]
    w = [rng.randint(-3, 3) for _ in range(n)]
    av = [sum(a[i, j] * v[j] for j in range(n)) for i in range(n)]
    sw = star(a, form)
    sw_w = [sum(sw[i, j] * w[j] for j in range(n)) for i in range(n)]
    assert bilinear(form, av, w) == bilinear(form, v, sw_w)


@given(form_and_matrix())
def test_a_plus_delta_a_is_fixed(fa):
    form, a = fa
    assert is_delta_fixed(a + delta(a, form), form)


@pytest.mark.parametrize("n,eps", FORMS)
def test_lie_algebra_dimensions(n, eps):
    form = gram_matrix(n, eps)
    g = n * (n - 1) // 2 if eps == 1 else n * (n + 1) // 2
    assert lie_basis("G_EPS", n, form).dim == g
    # b(eps) has dimension (dim g + rank) / 2
    assert lie_basis("B_EPS", n, form).dim == (g + n // 2) // 2
    assert lie_basis("B", n).dim == n * (n + 1) // 2


@given(st.sampled_from(FORMS), st.integers(0, 10**6))
def test_random_borel_eps_is_an_upper_isometry(ne, seed):
    form = gram_matrix(*ne)
    b = random_borel_eps(form, random.Random(seed))
    assert b.is_upper_triangular()
    assert star(b, form) @ b == QMatrix.identity(form.n)


@given(st.sampled_from([4, 6]), st.integers(0, 10**6))
def test_pll_star_twists_even_orthogonal_borel(n, seed):
    # the swap of e_l and e_l* normalizes B(eps) in type D
    form = gram_matrix(n, 1)
    p = pll_star(n, n // 2)
    b = random_borel_eps(form, random.Random(seed))
    assert (p @ b @ p).is_upper_triangular()


def test_pll_star_needs_even_n():
    with pytest.raises(OddN):
        pll_star(5, 2)


def test_nilpotent_exp_of_unit():
    x = QMatrix.from_rows([[0, 2], [0, 0]])
    assert nilpotent_exp(x) == QMatrix.from_rows([[1, 2], [0, 1]])
