"""The Seesaw quiver algebra, its representations M, N, M0 and string modules.

Vertices 1..l, omega, l*..1* in a line, arrows a_i : i -> i+1 (a_l ends at
omega), a loop gamma at omega, and a_i* : (i+1)* -> i* (a_l* starts at
omega).  The relations are gamma^2 and a_l* a_l.

The basis of V_omega is ordered v_1..v_l, [v], v_l*..v_1*, so that the
graded form restricted to V_omega is exactly ``gram_matrix(n, epsilon)``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import AlgebraMismatch, BadParameters, DimensionVectorMismatch, NotSymmetricRep
from .exact import QMatrix, rank_of_rows
from .forms import EpsForm, gram_matrix, star
from .orbits import build_mgamma, build_ngamma

OMEGA = "w"


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class SeesawAlgebra:
    l: int
    n: int

    def __post_init__(self):
        if self.l < 1 or self.n not in (2 * self.l, 2 * self.l + 1):
            raise BadParameters(f"need l >= 1 and n in {{2l, 2l+1}}, got l={self.l}, n={self.n}")

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        l = self.l
        return (tuple(str(i) for i in range(1, l + 1)) + (OMEGA,)
                + tuple(f"{i}*" for i in range(l, 0, -1)))

    @cached_property
    def arrows(self) -> tuple[Arrow, ...]:
        l = self.l
        front = [Arrow(f"a{i}", str(i), str(i + 1) if i < l else OMEGA) for i in range(1, l + 1)]
        back = [Arrow(f"a{i}*", f"{i + 1}*" if i < l else OMEGA, f"{i}*") for i in range(l, 0, -1)]
        return tuple(front + [Arrow("gamma", OMEGA, OMEGA)] + back)

    @cached_property
    def relations(self) -> tuple[tuple[str, ...], ...]:
        """Forbidden paths, arrows listed in the order they are traversed."""
        return (("gamma", "gamma"), (f"a{self.l}", f"a{self.l}*"))

    def arrow(self, name: str) -> Arrow:
        return next(a for a in self.arrows if a.name == name)

    def sigma(self, name: str) -> str:
        """The symmetry on vertices and arrows: i <-> i*, a_i <-> a_i*, fixing omega and gamma."""
        if name in (OMEGA, "gamma"):
            return name
        return name[:-1] if name.endswith("*") else name + "*"

    def dimension_vector(self) -> tuple[int, ...]:
        l = self.l
        return tuple(range(1, l + 1)) + (self.n,) + tuple(range(l, 0, -1))


def build_algebra(l: int, n: int) -> SeesawAlgebra:
    return SeesawAlgebra(l, n)


@dataclass(frozen=True)
class QuiverRep:
    algebra: SeesawAlgebra
    dims: tuple[tuple[str, int], ...]
    maps: tuple[tuple[str, QMatrix], ...] = field(repr=False)

    def __post_init__(self):
        d, m = dict(self.dims), dict(self.maps)
        if set(d) != set(self.algebra.vertices) or set(m) != {a.name for a in self.algebra.arrows}:
            raise ValueError("representation must list every vertex and arrow")
        for a in self.algebra.arrows:
            if m[a.name].shape != (d[a.target], d[a.source]):
                raise ValueError(f"map {a.name} has shape {m[a.name].shape}, "
                                 f"expected {(d[a.target], d[a.source])}")

    def dim(self, vertex: str) -> int:
        return dict(self.dims)[vertex]

    def map(self, arrow: str) -> QMatrix:
        return dict(self.maps)[arrow]

    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dim(v) for v in self.algebra.vertices)

    def satisfies_relations(self) -> bool:
        for path in self.algebra.relations:
            prod = self.map(path[0])
            for name in path[1:]:
                prod = self.map(name) @ prod
            if not prod.is_zero():
                return False
        return True

    def offsets(self) -> dict[str, int]:
        out, k = {}, 0
        for v in self.algebra.vertices:
            out[v] = k
            k += self.dim(v)
        return out

    def total_matrix(self) -> QMatrix:
        """The representation as one endomorphism of the graded space."""
        off = self.offsets()
        size = sum(d for _, d in self.dims)
        rows = [[Fraction(0)] * size for _ in range(size)]
        for a in self.algebra.arrows:
            m = self.map(a.name)
            for (i, j) in m.nonzero_positions():
                rows[off[a.target] + i][off[a.source] + j] += m[i, j]
        return QMatrix.from_rows(rows) if size else QMatrix(0, 0, ())

    def to_json(self) -> dict:
        return {"l": self.algebra.l, "n": self.algebra.n,
                "dims": {v: d for v, d in self.dims},
                "maps": {name: [[_num(x) for x in row] for row in m.to_rows()]
                         for name, m in self.maps}}


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def make_rep(algebra: SeesawAlgebra, dims: dict[str, int], maps: dict[str, QMatrix]) -> QuiverRep:
    full = {}
    for a in algebra.arrows:
        full[a.name] = maps.get(a.name) or QMatrix.zeros(dims[a.target], dims[a.source])
    return QuiverRep(algebra, tuple((v, dims[v]) for v in algebra.vertices),
                     tuple((a.name, full[a.name]) for a in algebra.arrows))


def _standard_dims(alg: SeesawAlgebra) -> dict[str, int]:
    return dict(zip(alg.vertices, alg.dimension_vector()))


def _flag_maps(alg: SeesawAlgebra) -> dict[str, QMatrix]:
    """Standard embeddings a_i and minus the standard projections a_i*."""
    l, n = alg.l, alg.n
    maps = {}
    for i in range(1, l + 1):
        rows = n if i == l else i + 1
        maps[f"a{i}"] = QMatrix.from_rows([[int(r == c) for c in range(i)] for r in range(rows)])
    # a_l* : v_k^(w*) at omega position n-k (0-based) -> -v_k^(l*)
    maps[f"a{l}*"] = QMatrix.from_rows([[-int(c == n - 1 - r) for c in range(n)] for r in range(l)])
    for i in range(1, l):
        maps[f"a{i}*"] = QMatrix.from_rows([[-int(r == c) for c in range(i + 1)] for r in range(i)])
    return maps


def build_M0(l: int, n: int) -> QuiverRep:
    """The flag representation: gamma acts by zero."""
    alg = build_algebra(l, n)
    return make_rep(alg, _standard_dims(alg), _flag_maps(alg))


def build_M(l: int, n: int, epsilon: int) -> QuiverRep:
    """gamma sends v_1 to v_l* and v_l to -epsilon v_1*."""
    alg = build_algebra(l, n)
    maps = _flag_maps(alg)
    maps["gamma"] = build_mgamma(n, l, epsilon)
    return make_rep(alg, _standard_dims(alg), maps)


def build_N(l: int, n: int) -> QuiverRep:
    """gamma sends v_1 to v_l and v_l* to -v_1*."""
    alg = build_algebra(l, n)
    maps = _flag_maps(alg)
    maps["gamma"] = build_ngamma(n, l)
    return make_rep(alg, _standard_dims(alg), maps)


def direct_sum(x: QuiverRep, y: QuiverRep) -> QuiverRep:
    _same_algebra(x, y)
    alg = x.algebra
    dims = {v: x.dim(v) + y.dim(v) for v in alg.vertices}
    maps = {}
    for a in alg.arrows:
        mx, my = x.map(a.name), y.map(a.name)
        rows = [[Fraction(0)] * dims[a.source] for _ in range(dims[a.target])]
        for (i, j) in mx.nonzero_positions():
            rows[i][j] = mx[i, j]
        for (i, j) in my.nonzero_positions():
            rows[mx.rows + i][mx.cols + j] = my[i, j]
        maps[a.name] = QMatrix(dims[a.target], dims[a.source],
                               tuple(v for row in rows for v in row))
    return make_rep(alg, dims, maps)


# graded form and symmetry


def graded_form(x: QuiverRep, epsilon: int) -> EpsForm:
    """The epsilon-form on the graded space of x.

    <v_k^(i), v_k^(i*)> = 1 and <v_k^(i*), v_k^(i)> = epsilon; on V_omega it
    is the canonical form of that dimension.
    """
    alg = x.algebra
    for v in alg.vertices:
        if x.dim(v) != x.dim(alg.sigma(v)):
            raise NotSymmetricRep("dimension vector is not symmetric")
    off = x.offsets()
    size = sum(d for _, d in x.dims)
    rows = [[0] * size for _ in range(size)]
    for i in range(1, alg.l + 1):
        a, b = off[str(i)], off[f"{i}*"]
        for k in range(x.dim(str(i))):
            rows[a + k][b + k] = 1
            rows[b + k][a + k] = epsilon
    d = x.dim(OMEGA)
    if d:
        g = gram_matrix(d, epsilon).gram
        for (i, j) in g.nonzero_positions():
            rows[off[OMEGA] + i][off[OMEGA] + j] = g[i, j]
    return EpsForm(size, epsilon, QMatrix.from_rows(rows))


def _blocks_to_rep(x: QuiverRep, total: QMatrix) -> dict[str, QMatrix]:
    off = x.offsets()
    out = {}
    for a in x.algebra.arrows:
        r0, c0 = off[a.target], off[a.source]
        out[a.name] = total.submatrix(range(r0, r0 + x.dim(a.target)),
                                      range(c0, c0 + x.dim(a.source)))
    return out


def nabla(x: QuiverRep, epsilon: int) -> QuiverRep:
    """Twisted dual: minus the adjoint of the total matrix, read back blockwise."""
    form = graded_form(x, epsilon)
    total = -star(x.total_matrix(), form)
    return make_rep(x.algebra, dict(x.dims), _blocks_to_rep(x, total))


def is_symmetric(x: QuiverRep, epsilon: int) -> bool:
    """M* + M = 0 for the graded form, i.e. nabla M = M."""
    t = x.total_matrix()
    return (star(t, graded_form(x, epsilon)) + t).is_zero()


# homomorphisms


def _same_algebra(x: QuiverRep, y: QuiverRep):
    if x.algebra != y.algebra:
        raise AlgebraMismatch("representations of different algebras")


def hom_dim(x: QuiverRep, y: QuiverRep) -> int:
    """dim Hom(x, y): graded f with f_t x_a = y_a f_s for every arrow a."""
    _same_algebra(x, y)
    alg = x.algebra
    index, k = {}, 0
    for v in alg.vertices:
        for r in range(y.dim(v)):
            for c in range(x.dim(v)):
                index[(v, r, c)] = k
                k += 1
    if k == 0:
        return 0
    rows = []
    for a in alg.arrows:
        xa, ya = x.map(a.name), y.map(a.name)
        s, t = a.source, a.target
        for r in range(y.dim(t)):
            for c in range(x.dim(s)):
                row = [0] * k
                for m in range(x.dim(t)):
                    if xa[m, c]:
                        row[index[(t, r, m)]] += xa[m, c]
                for m in range(y.dim(s)):
                    if ya[r, m]:
                        row[index[(s, m, c)]] -= ya[r, m]
                if any(row):
                    rows.append(row)
    return k - (rank_of_rows(rows) if rows else 0)


def _graded_isometry_basis(x: QuiverRep, form: EpsForm) -> list[QMatrix]:
    """Graded f with f + f* = 0, as E + Delta(E) over block-diagonal units."""
    off = x.offsets()
    size = form.n
    seen, basis = set(), []
    for v in x.algebra.vertices:
        o, d = off[v], x.dim(v)
        for i in range(o, o + d):
            for j in range(o, o + d):
                if (i, j) in seen:
                    continue
                sign, (p, q) = form.star_table[(i, j)]
                seen.update({(i, j), (p, q)})
                entries = [Fraction(0)] * (size * size)
                entries[i * size + j] += 1
                entries[p * size + q] -= sign
                if any(entries):
                    basis.append(QMatrix(size, size, tuple(entries)))
    return basis


def graded_isometry_dim(l: int, n: int, epsilon: int) -> int:
    """Dimension of the graded isometry group, counted from its Lie algebra."""
    x = build_M0(l, n)
    return len(_graded_isometry_basis(x, graded_form(x, epsilon)))


def isometry_dim_closed_form(l: int, n: int, epsilon: int) -> int:
    """sum i^2 + dim of the orthogonal / symplectic algebra in dimension n."""
    return sum(i * i for i in range(1, l + 1)) + n * (n - epsilon) // 2


def symmetric_stab_dim(x: QuiverRep, epsilon: int) -> int:
    """Dimension of the stabilizer of x in the graded isometry group."""
    if not is_symmetric(x, epsilon):
        raise NotSymmetricRep(f"representation is not {epsilon:+d}-symmetric")
    form = graded_form(x, epsilon)
    basis = _graded_isometry_basis(x, form)
    t = x.total_matrix()
    return len(basis) - rank_of_rows([(b @ t - t @ b).entries for b in basis])


# string modules


Letter = tuple[str, int]


@dataclass(frozen=True)
class StringModule:
    """A walk start --letters--> ...; letters are (arrow, +1) or (arrow, -1) for inverses."""

    algebra: SeesawAlgebra = field(repr=False)
    start: str
    word: tuple[Letter, ...]

    def walk_vertices(self) -> list[str]:
        out = [self.start]
        for name, sign in self.word:
            a = self.algebra.arrow(name)
            out.append(a.target if sign > 0 else a.source)
        return out

    def __str__(self) -> str:
        if not self.word:
            return f"e_{self.start}"
        return " ".join(name if s > 0 else name + "^-1" for name, s in self.word)

    def rep(self) -> QuiverRep:
        alg = self.algebra
        verts = self.walk_vertices()
        dims = {v: 0 for v in alg.vertices}
        pos = []
        for v in verts:
            pos.append(dims[v])
            dims[v] += 1
        entries = {a.name: {} for a in alg.arrows}
        for k, (name, sign) in enumerate(self.word):
            if sign > 0:
                entries[name][(pos[k + 1], pos[k])] = 1
            else:
                entries[name][(pos[k], pos[k + 1])] = 1
        maps = {}
        for a in alg.arrows:
            rows = [[0] * dims[a.source] for _ in range(dims[a.target])]
            for (i, j), v in entries[a.name].items():
                rows[i][j] = v
            maps[a.name] = QMatrix(dims[a.target], dims[a.source],
                                   tuple(Fraction(v) for row in rows for v in row))
        return make_rep(alg, dims, maps)


def _inverse_word(word: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple((name, -s) for name, s in reversed(word))


def _letter_ends(alg: SeesawAlgebra, letter: Letter) -> tuple[str, str]:
    a = alg.arrow(letter[0])
    return (a.source, a.target) if letter[1] > 0 else (a.target, a.source)


def _allowed(alg: SeesawAlgebra, word: tuple[Letter, ...]) -> bool:
    """No letter next to its inverse and no relation read directly or inversely."""
    if len(word) >= 2:
        (p, sp), (q, sq) = word[-2], word[-1]
        if p == q and sp == -sq:
            return False
    for rel in alg.relations:
        k = len(rel)
        if len(word) < k:
            continue
        tail = word[-k:]
        if all(s > 0 for _, s in tail) and tuple(n for n, _ in tail) == rel:
            return False
        if all(s < 0 for _, s in tail) and tuple(n for n, _ in reversed(tail)) == rel:
            return False
    return True


def enumerate_strings(alg: SeesawAlgebra, max_length: int = 64) -> list[StringModule]:
    """All strings up to inversion, by breadth-first extension of walks."""
    letters = [(a.name, s) for a in alg.arrows for s in (1, -1)]
    found: dict[tuple, StringModule] = {}
    queue = deque((v, ()) for v in alg.vertices)
    while queue:
        start, word = queue.popleft()
        if not word:
            key = ("", start)
            found.setdefault(key, StringModule(alg, start, ()))
            end = start
        else:
            inv = _inverse_word(word)
            end = StringModule(alg, start, word).walk_vertices()[-1]
            key = (min(word, inv),)
            if key not in found:
                found[key] = (StringModule(alg, start, word) if word <= inv
                              else StringModule(alg, end, inv))
        if len(word) >= max_length:
            raise RuntimeError("string length bound reached; algebra has bands?")
        for letter in letters:
            src, _ = _letter_ends(alg, letter)
            if src != end:
                continue
            new = word + (letter,)
            if _allowed(alg, new):
                queue.append((start, new))
    return sorted(found.values(), key=lambda s: (len(s.word), s.start, s.word))


def hom_order_leq(x: QuiverRep, y: QuiverRep, strings: list[StringModule] | None = None) -> bool:
    """[x, E] <= [y, E] for every string module E."""
    _same_algebra(x, y)
    if x.dimension_vector() != y.dimension_vector():
        raise DimensionVectorMismatch("Hom-order needs equal dimension vectors")
    strings = enumerate_strings(x.algebra) if strings is None else strings
    return all(hom_dim(x, e) <= hom_dim(y, e) for e in (s.rep() for s in strings))


def hom_order_witness(x: QuiverRep, y: QuiverRep) -> tuple[str, int, int] | None:
    """Some string E with [x, E] > [y, E], as (string, [x,E], [y,E])."""
    for s in enumerate_strings(x.algebra):
        e = s.rep()
        hx, hy = hom_dim(x, e), hom_dim(y, e)
        if hx > hy:
            return str(s), hx, hy
    return None


# coefficient quivers


def basis_labels(x: QuiverRep) -> dict[str, list[str]]:
    alg = x.algebra
    out = {}
    for v in alg.vertices:
        d = x.dim(v)
        if v != OMEGA:
            out[v] = [f"v{k}^({v})" for k in range(1, d + 1)]
            continue
        labels = []
        for p in range(1, d + 1):
            if p <= alg.l:
                labels.append(f"v{p}^(w)")
            elif p > d - alg.l:
                labels.append(f"v{d + 1 - p}^(w*)")
            else:
                labels.append("v^(w)")
        out[v] = labels
    return out


@dataclass(frozen=True)
class CoefficientEdge:
    source: str
    target: str
    arrow: str
    value: Fraction


def coefficient_quiver(x: QuiverRep) -> list[CoefficientEdge]:
    """One edge per nonzero coefficient of every arrow map in the standard bases."""
    labels = basis_labels(x)
    edges = []
    for a in x.algebra.arrows:
        m = x.map(a.name)
        for (i, j) in m.nonzero_positions():
            edges.append(CoefficientEdge(labels[a.source][j], labels[a.target][i], a.name, m[i, j]))
    return edges


def coefficient_quiver_dot(x: QuiverRep, name: str = "Gamma") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v, labels in basis_labels(x).items():
        for lab in labels:
            lines.append(f'  "{lab}";')
    for e in coefficient_quiver(x):
        lines.append(f'  "{e.source}" -> "{e.target}" [label="{e.arrow}: {e.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def rep_json(x: QuiverRep) -> str:
    return json.dumps(x.to_json(), sort_keys=True)
