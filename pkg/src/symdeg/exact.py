"""Exact linear algebra over the rationals and over small prime fields.

Everything here is pure Python: entries are :class:`fractions.Fraction`
(or plain ``int``, which mixes freely with ``Fraction``).  Matrices are
small (at most a few hundred rows), so dense storage is used throughout.

Elimination always pivots on the first nonzero entry in column order, so
results (and anything derived from them) are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DenominatorNotInvertible, DimensionMismatch

Rational = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QMatrix:
    """Immutable dense matrix with rational entries, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, tuple(_q(x) for row in rows for x in row))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls(n, n, tuple(_q(values[i]) if i == j else Fraction(0)
                               for i in range(n) for j in range(n)))

    # access

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_upper_triangular(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def nonzero_positions(self) -> list[tuple[int, int]]:
        c = self.cols
        return [divmod(k, c) for k, x in enumerate(self.entries) if x]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "QMatrix":
        rows, cols = list(rows), list(cols)
        return QMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    # arithmetic

    def _check_same_shape(self, other: "QMatrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, scalar) -> "QMatrix":
        s = _q(scalar)
        return QMatrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for row in a:
            acc = [Fraction(0)] * other.cols
            for k, x in enumerate(row):
                if x:
                    for j, y in enumerate(b[k]):
                        if y:
                            acc[j] += x * y
            out.extend(acc)
        return QMatrix(self.rows, other.cols, tuple(out))

    @property
    def T(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def inverse(self) -> "QMatrix":
        if not self.is_square:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.to_rows())]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return QMatrix(n, n, tuple(x for row in aug for x in row[n:]))

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in self.to_rows())


def matrix_unit(n: int, i: int, j: int) -> QMatrix:
    """The n x n matrix unit E_{i,j}, with *1-based* indices."""
    e = [Fraction(0)] * (n * n)
    e[(i - 1) * n + (j - 1)] = Fraction(1)
    return QMatrix(n, n, tuple(e))


def vec(m: QMatrix) -> tuple[Fraction, ...]:
    return m.entries


# elimination kernels


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [_q(x) for x in row]
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in row), 1)
        ints = [int(x * den) for x in row]
        if any(ints):
            out.append(ints)
    return out


def rank_of_rows(rows: Iterable[Sequence]) -> int:
    """Rank of the matrix with the given rows (fraction-free elimination)."""
    work = _integer_rows(rows)
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        p = prow[col]
        for r in range(rank + 1, len(work)):
            f = work[r][col]
            if f:
                row = [p * x - f * y for x, y in zip(work[r], prow)]
                g = reduce(gcd, row, 0)
                work[r] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == len(work):
            break
    return rank


def rank(m: QMatrix) -> int:
    """Exact rank over the rationals."""
    return rank_of_rows(m.to_rows())


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    work = [[_q(x) for x in row] for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(work)) if work[k][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        p = work[r][col]
        work[r] = [x / p for x in work[r]]
        for k in range(len(work)):
            if k != r and work[k][col]:
                f = work[k][col]
                work[k] = [x - f * y for x, y in zip(work[k], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0} for the matrix A with the given rows."""
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solution_space_dim(equations: Iterable[Mapping[Hashable, object]],
                       unknowns: Sequence[Hashable]) -> int:
    """Dimension of the solution space of a homogeneous linear system.

    Each equation maps unknown names to coefficients (missing names have
    coefficient zero).  The result is ``len(unknowns) - rank``.
    """
    index = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for eq in equations:
        row = [0] * len(index)
        for name, c in eq.items():
            row[index[name]] += c
        rows.append(row)
    return len(index) - (rank_of_rows(rows) if rows else 0)


def is_in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    if not basis:
        return not any(v)
    return rank_of_rows(list(basis) + [list(v)]) == rank_of_rows(basis)


# finite fields


@dataclass(frozen=True)
class FFMatrix:
    """Dense matrix over the prime field F_q, residues in [0, q)."""

    q: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")
        if any(not 0 <= x < self.q for x in self.entries):
            raise ValueError("residues must lie in [0, q)")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        if self.q != other.q or self.cols != other.rows:
            raise DimensionMismatch("incompatible F_q matrices")
        a, b, q = self.to_rows(), other.to_rows(), self.q
        out = tuple(sum(a[i][k] * b[k][j] for k in range(self.cols)) % q
                    for i in range(self.rows) for j in range(other.cols))
        return FFMatrix(q, self.rows, other.cols, out)


def ff_reduce(m: QMatrix, q: int) -> FFMatrix:
    """Entrywise reduction of a rational matrix modulo the prime q."""
    out = []
    for x in m.entries:
        if x.denominator % q == 0:
            raise DenominatorNotInvertible(f"denominator of {x} is divisible by {q}")
        out.append(x.numerator * pow(x.denominator, -1, q) % q)
    return FFMatrix(q, m.rows, m.cols, tuple(out))


def rank_mod(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank over F_q of an integer matrix."""
    work = [[x % q for x in row] for row in rows]
    work = [row for row in work if any(row)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(work)) if work[k][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][col], -1, q)
        prow = [x * inv % q for x in work[r]]
        work[r] = prow
        for k in range(r + 1, len(work)):
            f = work[k][col]
            if f:
                work[k] = [(x - f * y) % q for x, y in zip(work[k], prow)]
        r += 1
        if r == len(work):
            break
    return r


def ff_rank(m: FFMatrix) -> int:
    return rank_mod(m.to_rows(), m.q)
