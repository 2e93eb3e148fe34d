"""Brute-force orbit census over F_q, an oracle independent of the rational path.

All Delta-fixed square-zero matrices over F_q are listed, the group
B(eps)(F_q) is found by scanning every invertible upper-triangular matrix,
and the fixed set is split into orbits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import TooLarge
from .forms import EpsForm, gram_matrix, lie_basis
from .exact import ff_reduce
from .patterns import RankProfile, corner_ranks_rows

DEFAULT_BOUND = 3_000_000


@dataclass(frozen=True)
class CensusRow:
    profile: RankProfile
    orbit_count: int
    orbit_sizes: tuple[int, ...]


def _gram_mod(form: EpsForm, q: int) -> tuple[np.ndarray, np.ndarray]:
    g = np.array(ff_reduce(form.gram, q).to_rows(), dtype=np.int64)
    ginv = np.array(ff_reduce(form.gram_inverse, q).to_rows(), dtype=np.int64)
    return g, ginv


def fixed_square_zero(n: int, epsilon: int, q: int, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """All Delta-fixed x over F_q with x^2 = 0, shape (count, n, n)."""
    form = gram_matrix(n, epsilon)
    basis = np.array([ff_reduce(b, q).entries for b in lie_basis("G_EPS", n, form).basis],
                     dtype=np.int64)
    d = len(basis)
    if q ** d > bound:
        raise TooLarge(f"{q}^{d} fixed matrices exceeds bound {bound}")
    coeffs = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64).reshape(-1, d)
    xs = (coeffs @ basis % q).reshape(-1, n, n)
    sq = np.einsum("kij,kjm->kim", xs, xs) % q
    return xs[~sq.reshape(len(xs), -1).any(axis=1)]


def borel_eps_group(n: int, epsilon: int, q: int, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """B(eps)(F_q): upper-triangular g with g* g = 1, by exhaustive scan."""
    form = gram_matrix(n, epsilon)
    gram, ginv = _gram_mod(form, q)
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    total = (q - 1) ** n * q ** len(upper)
    if total > bound:
        raise TooLarge(f"{total} upper-triangular candidates exceeds bound {bound}")
    found = []
    diag_choices = list(itertools.product(range(1, q), repeat=n))
    strict = np.array(list(itertools.product(range(q), repeat=len(upper))),
                      dtype=np.int64).reshape(-1, len(upper))
    rows = [p[0] for p in upper]
    cols = [p[1] for p in upper]
    eye = np.eye(n, dtype=np.int64)
    for diag in diag_choices:
        gs = np.zeros((len(strict), n, n), dtype=np.int64)
        gs[:, range(n), range(n)] = diag
        if upper:
            gs[:, rows, cols] = strict
        # star(g) = gram^-1 g^t gram
        st = np.einsum("ij,kmj,mn->kin", ginv, gs, gram) % q
        prod = np.einsum("kij,kjm->kim", st, gs) % q
        ok = (prod == eye).all(axis=(1, 2))
        found.append(gs[ok])
    return np.concatenate(found)


def ffq_orbits(n: int, epsilon: int, q: int, bound: int = DEFAULT_BOUND) -> list[np.ndarray]:
    """Orbits of B(eps)(F_q) on the fixed square-zero set, each an array of matrices."""
    form = gram_matrix(n, epsilon)
    gram, ginv = _gram_mod(form, q)
    xs = fixed_square_zero(n, epsilon, q, bound)
    group = borel_eps_group(n, epsilon, q, bound)
    # inverse of g in B(eps) is star(g)
    inverses = np.einsum("ij,kmj,mn->kin", ginv, group, gram) % q
    index = {x.tobytes(): k for k, x in enumerate(xs)}
    seen = np.zeros(len(xs), dtype=bool)
    orbits = []
    for k in range(len(xs)):
        if seen[k]:
            continue
        conj = np.einsum("gij,jm,gmn->gin", group, xs[k], inverses) % q
        members = sorted({index[c.tobytes()] for c in conj})
        seen[members] = True
        orbits.append(xs[members])
    return orbits


def ff_profile(x: np.ndarray, q: int) -> RankProfile:
    return corner_ranks_rows([[int(v) for v in row] for row in x], modulus=q)


def ffq_orbit_census(n: int, epsilon: int, q: int, bound: int = DEFAULT_BOUND) -> list[CensusRow]:
    """Per corner-rank profile: number of F_q-orbits carrying it and their sizes.

    Raises RuntimeError if some orbit is not of constant profile.
    """
    if n > 5 or q not in (3, 5):
        raise TooLarge("census is limited to n <= 5 and q in {3, 5}")
    by_profile: dict[RankProfile, list[int]] = {}
    for orb in ffq_orbits(n, epsilon, q, bound):
        profiles = {ff_profile(x, q) for x in orb}
        if len(profiles) != 1:
            raise RuntimeError("corner-rank profile is not constant on an F_q-orbit")
        by_profile.setdefault(profiles.pop(), []).append(len(orb))
    rows = [CensusRow(p, len(s), tuple(sorted(s))) for p, s in by_profile.items()]
    return sorted(rows, key=lambda r: r.profile.q)
