"""Borel orbits of 2-nilpotent matrices: dimensions, M_gamma / N_gamma, symmetric orbits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BadParameters, Not2Nilpotent, NotDeltaFixed
from .exact import QMatrix, matrix_unit, rank_of_rows
from .forms import EpsForm, delta, gram_matrix, is_delta_fixed, lie_basis
from .patterns import (
    LinkPattern,
    RankProfile,
    corner_ranks,
    enumerate_patterns,
    is_delta_symmetric,
    pattern_from_profile,
    pattern_profile,
    pattern_to_matrix,
)


def build_mgamma(n: int, l: int, epsilon: int) -> QMatrix:
    """M_gamma = E_{l*,1} - epsilon E_{n,l}."""
    _check_params(n, l, epsilon)
    return matrix_unit(n, n + 1 - l, 1) - matrix_unit(n, n, l) * epsilon


def build_ngamma(n: int, l: int) -> QMatrix:
    """N_gamma = E_{l,1} - E_{n,l*}."""
    _check_params(n, l, 1)
    return matrix_unit(n, l, 1) - matrix_unit(n, n, n + 1 - l)


def _check_params(n: int, l: int, epsilon: int):
    if l < 2 or n not in (2 * l, 2 * l + 1):
        raise BadParameters(f"need l >= 2 and n in {{2l, 2l+1}}, got n={n}, l={l}")
    if epsilon not in (1, -1) or (epsilon == -1 and n % 2):
        raise BadParameters(f"bad epsilon {epsilon} for n={n}")


def _require_square_zero(a: QMatrix):
    if not a.is_square or not (a @ a).is_zero():
        raise Not2Nilpotent("matrix does not square to zero")


def _commutator_rank(a: QMatrix, basis) -> int:
    return rank_of_rows([(b @ a - a @ b).entries for b in basis])


def orbit_dim_A(a: QMatrix) -> tuple[int, int]:
    """(dim B.a, dim Stab_B(a)) with B the upper-triangular group."""
    _require_square_zero(a)
    basis = lie_basis("B", a.rows).basis
    stab = len(basis) - _commutator_rank(a, basis)
    return len(basis) - stab, stab


def orbit_dim_eps(a: QMatrix, form: EpsForm) -> tuple[int, int]:
    """(dim B(eps).a, dim Stab_B(eps)(a)) for a Delta-fixed square-zero a."""
    _require_square_zero(a)
    if not is_delta_fixed(a, form):
        raise NotDeltaFixed("matrix is not fixed by Delta")
    basis = lie_basis("B_EPS", form.n, form).basis
    stab = len(basis) - _commutator_rank(a, basis)
    return len(basis) - stab, stab


@dataclass(frozen=True)
class SymmetricData:
    epsilon: int
    fixed_representative: QMatrix = field(repr=False)
    dim_orbit_eps: int
    dim_stab_eps: int


@dataclass(frozen=True)
class OrbitRecord:
    pattern: LinkPattern
    representative: QMatrix = field(repr=False)
    profile: RankProfile = field(repr=False)
    dim_orbit: int
    dim_stab: int
    symmetric: SymmetricData | None = None

    @property
    def n(self) -> int:
        return self.pattern.n

    def dim(self, group: str) -> int:
        return self.symmetric.dim_orbit_eps if group == "EPS" else self.dim_orbit

    def matrix(self, group: str) -> QMatrix:
        return self.symmetric.fixed_representative if group == "EPS" else self.representative

    def to_json(self) -> dict:
        out = {"pattern": str(self.pattern), "dim_orbit": self.dim_orbit,
               "dim_stab": self.dim_stab}
        if self.symmetric is not None:
            out["symmetric"] = {"epsilon": self.symmetric.epsilon,
                                "dim_orbit_eps": self.symmetric.dim_orbit_eps,
                                "dim_stab_eps": self.symmetric.dim_stab_eps}
        return out


def orbit_record(p: LinkPattern) -> OrbitRecord:
    a = pattern_to_matrix(p)
    dim_orbit, dim_stab = orbit_dim_A(a)
    return OrbitRecord(p, a, pattern_profile(p), dim_orbit, dim_stab)


@lru_cache(maxsize=None)
def _type_a_orbits(n: int) -> tuple[OrbitRecord, ...]:
    return tuple(orbit_record(p) for p in enumerate_patterns(n))


def enumerate_orbits(n: int) -> list[OrbitRecord]:
    """All B-orbits in the 2-nilpotent n x n matrices, in canonical pattern order."""
    return list(_type_a_orbits(n))


# symmetric orbits

SIGNS = (1, -1, 2, -2)


def arc_orbits(p: LinkPattern) -> list[tuple[tuple[int, int], ...]]:
    """Orbits of Delta on the arcs of a Delta-symmetric pattern."""
    n = p.n
    seen, out = set(), []
    for s, t in p.arcs:
        if (s, t) in seen:
            continue
        image = (n + 1 - t, n + 1 - s)
        orb = ((s, t),) if image == (s, t) else ((s, t), image)
        seen.update(orb)
        out.append(orb)
    return out


def orthogonal_parity_obstruction(p: LinkPattern, epsilon: int) -> tuple[int, int] | None:
    """A corner (j*, j) whose rank is forced even but is odd on the pattern.

    For epsilon = +1 the block of a Delta-fixed matrix on rows >= j* and
    columns <= j is skew-symmetric after reversing its rows, hence has even
    rank.  Returns the offending (j*, j) or None.
    """
    if epsilon != 1:
        return None
    prof = pattern_profile(p)
    n = p.n
    for j in range(1, n + 1):
        if prof(n + 1 - j, j) % 2:
            return n + 1 - j, j
    return None


def _fixed_subspace_near_pattern(p: LinkPattern, form: EpsForm) -> list[QMatrix]:
    """Basis of Delta-fixed matrices supported weakly north-east of the arcs.

    Conjugating E_{t,s} by upper-triangular g only creates entries (i, j)
    with i <= t and j >= s, and this support is Delta-stable for symmetric p.
    """
    n = p.n
    allowed = {(i, j) for s, t in p.arcs for i in range(1, t + 1) for j in range(s, n + 1)}
    basis, seen = [], set()
    for (i, j) in sorted(allowed):
        if (i, j) in seen:
            continue
        seen.update({(i, j), (n + 1 - j, n + 1 - i)})
        e = matrix_unit(n, i, j)
        x = e + delta(e, form)
        if not x.is_zero():
            basis.append(x)
    return basis


def _arc_terms(p: LinkPattern, form: EpsForm) -> tuple[QMatrix, list[QMatrix]]:
    """Sum of E + Delta(E) over paired arc orbits, and the self-paired arc units."""
    n = p.n
    base, self_terms = QMatrix.zeros(n), []
    for orb in arc_orbits(p):
        s, t = orb[0]
        e = matrix_unit(n, t, s)
        if len(orb) == 2:
            base = base + e + delta(e, form)
        else:
            self_terms.append(e)
    return base, self_terms


def rational_forms(p: LinkPattern, form: EpsForm) -> list[QMatrix]:
    """Delta-fixed representatives of one orbit that need not be rationally conjugate.

    The rational torus rescales a self-paired arc only by squares, so the
    signed sums with different coefficients on those arcs can lie in
    distinct rational orbits of one geometric orbit.
    """
    if not is_delta_symmetric(p):
        return []
    target = pattern_profile(p)
    base, self_terms = _arc_terms(p, form)
    out = []
    for coeffs in itertools.product(SIGNS, repeat=len(self_terms)):
        cand = base
        for c, e in zip(coeffs, self_terms):
            cand = cand + e * c
        if _accept(cand, form, target):
            out.append(cand)
    return out


def find_fixed_representative(p: LinkPattern, form: EpsForm,
                              exhaustive_cap: int = 200_000) -> QMatrix | None:
    """A Delta-fixed square-zero matrix in the B-orbit of p, or None.

    Signed sums over the Delta-orbits of arcs are tried first; failing
    that, the even-rank obstruction is checked, and only then the Delta-fixed
    subspace near the pattern is searched with coefficients in -2..2.
    """
    if not is_delta_symmetric(p):
        return None
    target = pattern_profile(p)
    n = p.n
    forms_found = rational_forms(p, form)
    if forms_found:
        return forms_found[0]
    if orthogonal_parity_obstruction(p, form.epsilon) is not None:
        return None
    basis = _fixed_subspace_near_pattern(p, form)
    if 5 ** len(basis) > exhaustive_cap:
        return None
    for coeffs in itertools.product(range(-2, 3), repeat=len(basis)):
        cand = QMatrix.zeros(n)
        for c, b in zip(coeffs, basis):
            if c:
                cand = cand + b * c
        if _accept(cand, form, target):
            return cand
    return None


def _accept(cand: QMatrix, form: EpsForm, target: RankProfile) -> bool:
    return ((cand @ cand).is_zero() and is_delta_fixed(cand, form)
            and corner_ranks(cand) == target)


@lru_cache(maxsize=None)
def _symmetric(n: int, epsilon: int) -> tuple[tuple[OrbitRecord, ...], tuple[LinkPattern, ...]]:
    form = gram_matrix(n, epsilon)
    records, omitted = [], []
    for rec in _type_a_orbits(n):
        if not is_delta_symmetric(rec.pattern):
            continue
        fixed = find_fixed_representative(rec.pattern, form)
        if fixed is None:
            omitted.append(rec.pattern)
            continue
        d_orb, d_stab = orbit_dim_eps(fixed, form)
        records.append(OrbitRecord(rec.pattern, rec.representative, rec.profile,
                                   rec.dim_orbit, rec.dim_stab,
                                   SymmetricData(epsilon, fixed, d_orb, d_stab)))
    return tuple(records), tuple(omitted)


def enumerate_symmetric_orbits(n: int, epsilon: int) -> list[OrbitRecord]:
    """One record per B(eps)-orbit on the Delta-fixed 2-nilpotent matrices."""
    gram_matrix(n, epsilon)  # validates (n, epsilon)
    return list(_symmetric(n, epsilon)[0])


def omitted_symmetric_patterns(n: int, epsilon: int) -> list[LinkPattern]:
    """Delta-symmetric patterns whose B-orbit contains no Delta-fixed matrix."""
    return list(_symmetric(n, epsilon)[1])


def record_for(a: QMatrix, form: EpsForm | None = None) -> OrbitRecord:
    """The orbit record of a single 2-nilpotent matrix, without enumerating its neighbours.

    With a form, ``a`` must be Delta-fixed and becomes the symmetric representative.
    """
    p = pattern_from_profile(corner_ranks(a))
    rec = orbit_record(p)
    if form is None:
        return rec
    d_orb, d_stab = orbit_dim_eps(a, form)
    return OrbitRecord(p, rec.representative, rec.profile, rec.dim_orbit, rec.dim_stab,
                       SymmetricData(form.epsilon, a, d_orb, d_stab))


def find_record(records, matrix: QMatrix) -> OrbitRecord | None:
    prof = corner_ranks(matrix)
    return next((r for r in records if r.profile == prof), None)


# closed forms for M_gamma and N_gamma


def stabilizer_table_closed_form(l: int) -> dict[str, dict[str, int]]:
    """Stabilizer / orbit dimensions of M_gamma and N_gamma by type."""
    return {
        "A": {"stab_M": (2 * l - 1) * (l - 2) + 3, "orbit_M": 6 * (l - 1) + 1,
              "stab_N": (2 * l - 1) * (l - 2) + 4, "orbit_N": 6 * (l - 1)},
        "B": {"stab_M": l * (l - 2) + 2, "orbit_M": 3 * (l - 1) + 1,
              "stab_N": l * (l - 2) + 3, "orbit_N": 3 * (l - 1)},
        "C": {"stab_M": l * (l - 2) + 1, "orbit_M": 3 * (l - 1) + 2,
              "stab_N": l * (l - 2) + 2, "orbit_N": 3 * (l - 1) + 1},
        "D": {"stab_M": (l - 1) * (l - 2) + 2, "orbit_M": 3 * (l - 1) - 1,
              "stab_N": (l - 1) * (l - 2) + 2, "orbit_N": 3 * (l - 1) - 1},
    }


TYPE_PARAMS = {"A": (0, 1), "B": (1, 1), "C": (0, -1), "D": (0, 1)}


def type_setting(kind: str, l: int) -> tuple[int, int]:
    """(n, epsilon) used for each type at rank l."""
    extra, eps = TYPE_PARAMS[kind]
    return 2 * l + extra, eps


def stabilizer_table_computed(l: int) -> dict[str, dict[str, int]]:
    out = {}
    for kind in "ABCD":
        n, eps = type_setting(kind, l)
        m, nn = build_mgamma(n, l, eps), build_ngamma(n, l)
        if kind == "A":
            (om, sm), (on, sn) = orbit_dim_A(m), orbit_dim_A(nn)
        else:
            form = gram_matrix(n, eps)
            (om, sm), (on, sn) = orbit_dim_eps(m, form), orbit_dim_eps(nn, form)
        out[kind] = {"stab_M": sm, "orbit_M": om, "stab_N": sn, "orbit_N": on}
    return out
