"""Affine symmetric group of type A_{n-1}: windows, reflections, length, Bruhat order.

An affine permutation w is a bijection of Z with w(i + n) = w(i) + n and
sum_{i=1..n} (w(i) - i) = 0, stored by its window [w(1), ..., w(n)].
Products compose right to left: (v w)(i) = v(w(i)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import NotStronglyOrthogonal


@dataclass(frozen=True)
class AffinePerm:
    n: int
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(self.window)
        object.__setattr__(self, "window", w)
        n = self.n
        if len(w) != n:
            raise ValueError("window length must equal n")
        if len({x % n for x in w}) != n:
            raise ValueError(f"window {w} is not a bijection mod {n}")
        if sum(w) != n * (n + 1) // 2:
            raise ValueError(f"window {w} does not have the affine sum")

    @classmethod
    def identity(cls, n: int) -> "AffinePerm":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "AffinePerm":
        vals = tuple(int(x) for x in text.strip().strip("[]").split(","))
        return cls(len(vals), vals)

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.window) + "]"

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        return AffinePerm(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "AffinePerm":
        n = self.n
        inv = [0] * n
        for i, x in enumerate(self.window, start=1):
            q, r = divmod(x - 1, n)
            inv[r] = i - q * n
        return AffinePerm(n, tuple(inv))

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def has_right_descent(self, i: int) -> bool:
        """w s_i < w; i in 0..n-1, with s_0 the affine simple reflection."""
        if i == 0:
            return self.window[-1] > self.window[0] + self.n
        return self.window[i - 1] > self.window[i]

    def right_descents(self) -> list[int]:
        return [i for i in range(self.n) if self.has_right_descent(i)]

    def times_simple(self, i: int) -> "AffinePerm":
        """w s_i (swap window positions)."""
        w = list(self.window)
        if i == 0:
            w[0], w[-1] = w[-1] - self.n, w[0] + self.n
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return AffinePerm(self.n, tuple(w))


def simple(n: int, i: int) -> AffinePerm:
    return AffinePerm.identity(n).times_simple(i)


def length(w: AffinePerm) -> int:
    """Coxeter length, sum over i < j in the window of |floor((w(j) - w(i)) / n)|."""
    n, win = w.n, w.window
    return sum(abs((win[j] - win[i]) // n) for i, j in combinations(range(n), 2))


def reduced_word(w: AffinePerm) -> list[int]:
    """A reduced word (s_{i1} ... s_{ik} = w) by repeatedly stripping right descents."""
    word = []
    while not w.is_identity():
        i = w.right_descents()[0]
        word.append(i)
        w = w.times_simple(i)
    return word[::-1]


def length_by_word(w: AffinePerm) -> int:
    return len(reduced_word(w))


@dataclass(frozen=True)
class AffineRoot:
    """The affine root e_i - e_j + k delta (1 <= i, j <= n, i != j)."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("affine root needs i != j")

    def negate(self) -> "AffineRoot":
        return AffineRoot(self.j, self.i, -self.k)


def alpha(a: int, b: int, k: int = 0) -> AffineRoot:
    """alpha_a + ... + alpha_b + k delta = e_a - e_{b+1} + k delta."""
    return AffineRoot(a, b + 1, k)


def reflection(r: AffineRoot, n: int) -> AffinePerm:
    """Affine transposition exchanging the classes of i and j + k n."""
    if not (1 <= r.i <= n and 1 <= r.j <= n):
        raise ValueError("root indices out of range")
    shift = (r.j + r.k * n) - r.i
    win = list(range(1, n + 1))
    win[r.i - 1] = r.i + shift
    win[r.j - 1] = r.j - shift
    return AffinePerm(n, tuple(win))


def sigma_hat(roots: list[AffineRoot], n: int) -> AffinePerm:
    refl = [reflection(r, n) for r in roots]
    for a, b in combinations(refl, 2):
        if a * b != b * a:
            raise NotStronglyOrthogonal("reflections do not commute")
    out = AffinePerm.identity(n)
    for s in refl:
        out = out * s
    return out


def bruhat_leq(v: AffinePerm, w: AffinePerm) -> bool:
    if v.n != w.n:
        raise ValueError("different n")
    return _bruhat(v.n, v.window, w.window)


@lru_cache(maxsize=200_000)
def _bruhat(n: int, v: tuple[int, ...], w: tuple[int, ...]) -> bool:
    vp, wp = AffinePerm(n, v), AffinePerm(n, w)
    if wp.is_identity():
        return vp.is_identity()
    s = wp.right_descents()[0]
    ws = wp.times_simple(s).window
    if vp.has_right_descent(s):
        return _bruhat(n, vp.times_simple(s).window, ws)
    return _bruhat(n, v, ws)


def random_element(n: int, rng: random.Random, steps: int) -> AffinePerm:
    w = AffinePerm.identity(n)
    for _ in range(steps):
        w = w.times_simple(rng.randrange(n))
    return w


def _minus_delta(r: AffineRoot) -> AffineRoot:
    """-r - delta for a classical root r."""
    return AffineRoot(r.j, r.i, -1)


# the strongly orthogonal root sets attached to M_gamma and N_gamma (n = 2l)


def m_hat_roots(l: int) -> list[AffineRoot]:
    """(-alpha_{1 l} - delta, -alpha_{l* 1*} - delta)."""
    n = 2 * l
    return [_minus_delta(alpha(1, l)), _minus_delta(alpha(l, n - 1))]


def n_hat_roots(l: int) -> list[AffineRoot]:
    """(-alpha_{1 (l-1)} - delta, -alpha_{(l-1)* 1*} - delta)."""
    n = 2 * l
    return [_minus_delta(alpha(1, l - 1)), _minus_delta(alpha(l + 1, n - 1))]


def sigma_m_hat(l: int) -> AffinePerm:
    return sigma_hat(m_hat_roots(l), 2 * l)


def sigma_n_hat(l: int) -> AffinePerm:
    return sigma_hat(n_hat_roots(l), 2 * l)


def length_identity_check(l: int) -> dict:
    """Lengths of sigma_M^, sigma_N^ against 2 dim(B.X) - 2 with live orbit dimensions."""
    from .orbits import build_mgamma, build_ngamma, orbit_dim_A

    n = 2 * l
    sm, sn = sigma_m_hat(l), sigma_n_hat(l)
    dim_m = orbit_dim_A(build_mgamma(n, l, 1))[0]
    dim_n = orbit_dim_A(build_ngamma(n, l))[0]
    len_m, len_n = length(sm), length(sn)
    s_l = simple(n, l)
    report = {
        "l": l,
        "n": n,
        "sigma_M": str(sm),
        "sigma_N": str(sn),
        "length_M": len_m,
        "length_N": len_n,
        "length_M_word": length_by_word(sm),
        "length_N_word": length_by_word(sn),
        "dim_orbit_M": dim_m,
        "dim_orbit_N": dim_n,
        "expected_M": 2 * dim_m - 2,
        "expected_N": 2 * dim_n - 2,
        "closed_form_M": 12 * (l - 1),
        "closed_form_N": 12 * (l - 1) - 2,
        "conjugation_identity": s_l * sn * s_l == sm,
        "bruhat_N_leq_M": bruhat_leq(sn, sm),
        "bruhat_M_leq_N": bruhat_leq(sm, sn),
        "informational": l < 4,
    }
    report["ok"] = (len_m == report["expected_M"] == report["closed_form_M"] == report["length_M_word"]
                    and len_n == report["expected_N"] == report["closed_form_N"] == report["length_N_word"]
                    and report["conjugation_identity"] and report["bruhat_N_leq_M"]
                    and not report["bruhat_M_leq_N"])
    return report


# D_l inside A_{2l-1}


def simple_root_vector(k: int, n: int) -> list[int]:
    v = [0] * n
    v[k - 1], v[k] = 1, -1
    return v


def beta_basis(l: int) -> list[list[int]]:
    n = 2 * l
    a = lambda k: simple_root_vector(k, n)
    add = lambda *vs: [sum(c) for c in zip(*vs)]
    betas = [add(a(i), a(n - i)) for i in range(1, l)]
    betas.append(add(a(l - 1), a(l + 1), a(l), a(l)))
    return betas


def cartan_matrix(vectors: list[list[int]]) -> list[list[Fraction]]:
    dot = lambda u, v: sum(x * y for x, y in zip(u, v))
    return [[Fraction(2 * dot(u, v), dot(v, v)) for v in vectors] for u in vectors]


def d_cartan(l: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    edges = [(k, k + 1) for k in range(l - 2)] + [(l - 3, l - 1)]
    for a, b in edges:
        c[a][b] = c[b][a] = -1
    return c


def dl_basis_check(l: int) -> bool:
    if l < 3:
        raise ValueError("D_l basis check needs l >= 3")
    return cartan_matrix(beta_basis(l)) == d_cartan(l)
