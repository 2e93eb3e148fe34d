"""Oriented link patterns and corner-rank profiles.

A link pattern on {1..n} is a set of arcs s -> t in which every vertex
touches at most one arc.  Its canonical matrix is sum E_{t,s}, which squares
to zero; every B-orbit of 2-nilpotent matrices contains exactly one such
matrix up to the torus.

The corner rank q_{i,j}(A) is the rank of the block of A on rows i..n and
columns 1..j.  It is invariant under conjugation by upper-triangular
matrices and can only drop under degeneration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from .errors import NotAPatternProfile
from .exact import QMatrix

Arc = tuple[int, int]


@dataclass(frozen=True, order=True)
class LinkPattern:
    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        arcs = tuple(sorted(self.arcs))
        object.__setattr__(self, "arcs", arcs)
        used = []
        for s, t in arcs:
            if s == t:
                raise ValueError(f"loop {s}->{t} in link pattern")
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise ValueError(f"arc {s}->{t} out of range for n={self.n}")
            used += [s, t]
        if len(used) != len(set(used)):
            raise ValueError(f"vertex used twice in {arcs}")

    def __str__(self) -> str:
        return ",".join(f"{s}->{t}" for s, t in self.arcs) if self.arcs else "empty"

    @classmethod
    def parse(cls, n: int, text: str) -> "LinkPattern":
        text = text.strip()
        if text == "empty":
            return cls(n, ())
        arcs = []
        for part in text.split(","):
            s, t = part.split("->")
            arcs.append((int(s), int(t)))
        return cls(n, tuple(arcs))

    @property
    def size(self) -> int:
        return len(self.arcs)

    def sort_key(self):
        return (len(self.arcs), self.arcs)


def _matchings(vertices: Sequence[int]) -> Iterator[list[Arc]]:
    if not vertices:
        yield []
        return
    v, rest = vertices[0], vertices[1:]
    yield from _matchings(rest)
    for k, w in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in _matchings(remaining):
            yield [(v, w)] + tail
            yield [(w, v)] + tail


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[LinkPattern, ...]:
    pats = [LinkPattern(n, tuple(m)) for m in _matchings(list(range(1, n + 1)))]
    return tuple(sorted(pats, key=LinkPattern.sort_key))


def enumerate_patterns(n: int) -> list[LinkPattern]:
    """All directed partial matchings on {1..n}, by arc count then arc list."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_enumerate(n))


def pattern_to_matrix(p: LinkPattern) -> QMatrix:
    n = p.n
    e = [Fraction(0)] * (n * n)
    for s, t in p.arcs:
        e[(t - 1) * n + (s - 1)] = Fraction(1)
    return QMatrix(n, n, tuple(e))


def delta_on_pattern(p: LinkPattern) -> LinkPattern:
    n = p.n
    return LinkPattern(n, tuple((n + 1 - t, n + 1 - s) for s, t in p.arcs))


def is_delta_symmetric(p: LinkPattern) -> bool:
    return delta_on_pattern(p) == p


@dataclass(frozen=True)
class RankProfile:
    """Table q[i-1][j-1] = q_{i,j} for 1 <= i, j <= n."""

    n: int
    q: tuple[tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        if j < 1 or i > self.n:
            return 0
        return self.q[i - 1][j - 1]

    def __le__(self, other: "RankProfile") -> bool:
        return all(a <= b for ra, rb in zip(self.q, other.q) for a, b in zip(ra, rb))

    def first_excess(self, other: "RankProfile") -> tuple[int, int] | None:
        """Some (i, j) with self.q_{i,j} > other.q_{i,j}, if any (1-based)."""
        for i, (ra, rb) in enumerate(zip(self.q, other.q)):
            for j, (a, b) in enumerate(zip(ra, rb)):
                if a > b:
                    return i + 1, j + 1
        return None

    def is_valid(self) -> bool:
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                v = self(i, j)
                if v < 0 or v > min(n + 1 - i, j):
                    return False
                if i < n and self(i + 1, j) > v:
                    return False
                if j < n and self(i, j + 1) < v:
                    return False
        return True

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.q]


def prefix_ranks(rows: list[list], modulus: int | None = None) -> list[int]:
    """r[j] = rank of the first j+1 columns, from one column-order elimination.

    Over the rationals when ``modulus`` is None, otherwise over F_modulus.
    Rows must hold integers or Fractions (integers only for F_q).
    """
    if not rows:
        return []
    ncols = len(rows[0])
    if modulus is None:
        work = []
        for row in rows:
            den = 1
            for x in row:
                d = x.denominator if isinstance(x, Fraction) else 1
                den = den * d // gcd(den, d)
            ints = [int(x * den) for x in row]
            if any(ints):
                work.append(ints)
    else:
        work = [[x % modulus for x in row] for row in rows]
        work = [row for row in work if any(row)]
    out = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(work)) if work[k][col]), None)
        if piv is not None:
            work[r], work[piv] = work[piv], work[r]
            prow = work[r]
            p = prow[col]
            for k in range(r + 1, len(work)):
                f = work[k][col]
                if f:
                    if modulus is None:
                        work[k] = [p * x - f * y for x, y in zip(work[k], prow)]
                    else:
                        work[k] = [(p * x - f * y) % modulus for x, y in zip(work[k], prow)]
            r += 1
        out.append(r)
    return out


def corner_ranks_rows(rows: list[list], modulus: int | None = None) -> RankProfile:
    n = len(rows)
    q = tuple(tuple(prefix_ranks([list(r) for r in rows[i:]], modulus)) for i in range(n))
    return RankProfile(n, q)


def corner_ranks(a: QMatrix) -> RankProfile:
    if not a.is_square:
        raise ValueError("corner ranks need a square matrix")
    return corner_ranks_rows(a.to_rows())


def pattern_profile(p: LinkPattern) -> RankProfile:
    """Combinatorial corner ranks: q_{i,j} = #{arcs s->t : s <= j, t >= i}."""
    n = p.n
    return RankProfile(n, tuple(
        tuple(sum(1 for s, t in p.arcs if s <= j and t >= i) for j in range(1, n + 1))
        for i in range(1, n + 1)))


def pattern_from_profile(rp: RankProfile) -> LinkPattern:
    n = rp.n
    arcs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            m = rp(i, j) - rp(i, j - 1) - rp(i + 1, j) + rp(i + 1, j - 1)
            if m < 0 or m > 1:
                raise NotAPatternProfile(f"mixed difference {m} at ({i},{j})")
            if m:
                arcs.append((j, i))
    try:
        p = LinkPattern(n, tuple(arcs))
    except ValueError as exc:
        raise NotAPatternProfile(str(exc)) from exc
    if pattern_profile(p) != rp:
        raise NotAPatternProfile("profile is not realized by a link pattern")
    return p


def pattern_count(n: int) -> int:
    """sum_k C(n, 2k) (2k)!/k!  (choose 2k vertices, pair them, orient)."""
    from math import comb, factorial
    return sum(comb(n, 2 * k) * factorial(2 * k) // factorial(k) for k in range(n // 2 + 1))
