"""Canonical epsilon-forms, the adjoint, the involution Delta and Lie algebra bases.

Conventions: ``i* = n + 1 - i``.  For epsilon = +1 the Gram matrix is the
antidiagonal J_n; for epsilon = -1 (n = 2l) it is [[0, J_l], [-J_l, 0]].
The adjoint of A is ``gram^-1 A^t gram`` and Delta(A) = -A*.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Literal

from .errors import DimensionMismatch, OddN, OddSymplectic
from .exact import QMatrix, matrix_unit

LieLabel = Literal["B", "G_EPS", "B_EPS"]


@dataclass(frozen=True)
class EpsForm:
    n: int
    epsilon: int
    gram: QMatrix = field(repr=False)

    @cached_property
    def gram_inverse(self) -> QMatrix:
        return self.gram.inverse()

    @cached_property
    def star_table(self) -> dict[tuple[int, int], tuple[int, tuple[int, int]]]:
        """0-based position p -> (sign, position) with star(E_p) = sign * E_position.

        Derived from the Gram matrix: gram^-1 E_{ji} gram is the outer product
        of column j of gram^-1 and row i of gram.  Signs are never hand-coded.
        """
        n, g, gi = self.n, self.gram, self.gram_inverse
        cols = [[(k, gi[k, j]) for k in range(n) if gi[k, j]] for j in range(n)]
        rows = [[(m, g[i, m]) for m in range(n) if g[i, m]] for i in range(n)]
        table = {}
        for i in range(n):
            for j in range(n):
                terms = [(a * b, (k, m)) for k, a in cols[j] for m, b in rows[i]]
                if len(terms) != 1:
                    raise ValueError("star table needs a monomial Gram matrix")
                sign, pos = terms[0]
                table[(i, j)] = (int(sign), pos)
        return table

    @property
    def label(self) -> str:
        if self.epsilon == -1:
            return "C"
        return "D" if self.n % 2 == 0 else "B"


@lru_cache(maxsize=None)
def gram_matrix(n: int, epsilon: int) -> EpsForm:
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if epsilon == -1 and n % 2:
        raise OddSymplectic(f"no symplectic form in odd dimension {n}")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][n - 1 - i] = 1 if (epsilon == 1 or i < n // 2) else -1
    return EpsForm(n, epsilon, QMatrix.from_rows(rows))


def star_by_product(a: QMatrix, form: EpsForm) -> QMatrix:
    """gram^-1 A^t gram as three dense products (reference for ``star``)."""
    _check(a, form)
    return form.gram_inverse @ a.T @ form.gram


def _check(a: QMatrix, form: EpsForm):
    if a.shape != (form.n, form.n):
        raise DimensionMismatch(f"expected {form.n}x{form.n}, got {a.rows}x{a.cols}")


def star(a: QMatrix, form: EpsForm) -> QMatrix:
    """Adjoint with respect to the form: <v, A w> = <A* v, w>."""
    _check(a, form)
    n = form.n
    out = [Fraction(0)] * (n * n)
    table = form.star_table
    for (i, j) in a.nonzero_positions():
        sign, (k, m) = table[(i, j)]
        out[k * n + m] += sign * a[i, j]
    return QMatrix(n, n, tuple(out))


def delta(a: QMatrix, form: EpsForm) -> QMatrix:
    """The involution A -> -A*; its fixed points lie in Lie(G(epsilon))."""
    return -star(a, form)


def is_delta_fixed(a: QMatrix, form: EpsForm) -> bool:
    return delta(a, form) == a


def bilinear(form: EpsForm, v, w) -> Fraction:
    g = form.gram
    return sum((v[i] * g[i, j] * w[j] for i in range(form.n) for j in range(form.n)), Fraction(0))


@dataclass(frozen=True)
class LieBasis:
    label: str
    n: int
    basis: tuple[QMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def symmetric_unit(form: EpsForm, i: int, j: int) -> QMatrix | None:
    """E_{ij} + Delta(E_{ij}) (1-based), or None when it vanishes."""
    e = matrix_unit(form.n, i, j)
    x = e + delta(e, form)
    return None if x.is_zero() else x


def lie_basis(label: LieLabel, n: int, form: EpsForm | None = None) -> LieBasis:
    if label == "B":
        return LieBasis("B", n, tuple(matrix_unit(n, i, j)
                                      for i in range(1, n + 1) for j in range(i, n + 1)))
    if form is None:
        raise ValueError(f"{label} needs a form")
    if form.n != n:
        raise DimensionMismatch("form dimension differs from n")
    seen = set()
    basis = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if label == "B_EPS" and i > j:
                continue
            _, (k, m) = form.star_table[(i - 1, j - 1)]
            # orbit of the position under (i, j) -> (j*, i*)
            key = frozenset({(i - 1, j - 1), (k, m)})
            if key in seen:
                continue
            seen.add(key)
            x = symmetric_unit(form, i, j)
            if x is not None:
                basis.append(x)
    return LieBasis(label, n, tuple(basis))


def rank_of_type(n: int) -> int:
    return n // 2


def pll_star(n: int, l: int) -> QMatrix:
    """Permutation matrix swapping e_l and e_{l*}; needs n = 2l."""
    if n != 2 * l:
        raise OddN(f"P_(l l*) needs n = 2l, got n={n}, l={l}")
    perm = list(range(n))
    perm[l - 1], perm[l] = perm[l], perm[l - 1]
    return QMatrix.from_rows([[int(perm[i] == j) for j in range(n)] for i in range(n)])


def nilpotent_exp(x: QMatrix) -> QMatrix:
    """exp(x) for nilpotent x, as the finite exact power series."""
    n = x.rows
    out = QMatrix.identity(n)
    term = QMatrix.identity(n)
    for k in range(1, n + 1):
        term = term @ x
        if term.is_zero():
            break
        out = out + term * Fraction(1, factorial(k))
    return out


def random_torus_eps(form: EpsForm, rng: random.Random,
                     values=(1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3)) -> QMatrix:
    """Random rational torus element t of G(epsilon): t_{i*} = 1/t_i."""
    n = form.n
    t = [Fraction(1)] * n
    for i in range(n // 2):
        v = Fraction(rng.choice(values))
        t[i], t[n - 1 - i] = v, 1 / v
    if n % 2:
        t[n // 2] = Fraction(rng.choice((1, -1)))
    return QMatrix.diagonal(t)


def random_borel_eps(form: EpsForm, rng: random.Random, coeff_range: int = 2) -> QMatrix:
    """Random element exp(x) t of B(epsilon) with x strictly upper in b(epsilon)."""
    strict = [b for b in lie_basis("B_EPS", form.n, form).basis
              if all(b[i, i] == 0 for i in range(form.n))]
    x = QMatrix.zeros(form.n)
    for b in strict:
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            x = x + b * c
    return nilpotent_exp(x) @ random_torus_eps(form, rng)


def random_borel(n: int, rng: random.Random, coeff_range: int = 2) -> QMatrix:
    """Random invertible upper-triangular matrix with small rational entries."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.choice((1, -1, 2, -2, 3, Fraction(1, 2)))
        for j in range(i + 1, n):
            rows[i][j] = rng.randint(-coeff_range, coeff_range)
    return QMatrix.from_rows(rows)
