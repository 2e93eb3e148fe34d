"""Closure order of Borel orbits by sandwiching.

Upper bound: corner ranks only drop and orbit dimension strictly drops along
a proper degeneration, so a violation of either rules a relation out.  In
even orthogonal type the corner ranks for the flag with e_l and e_l*
swapped are used as well, since B(eps) stabilizes that flag too.
Lower bound: an explicit curve certificate, a chain of steps "conjugate by a
unipotent U, then take the limit t -> 0 of t^k diag(t^d) (.) diag(t^-d)",
which is recomputed exactly on verification.  Pairs caught by neither are
reported as UNDECIDED, never silently resolved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import InvalidCertificate
from .exact import QMatrix, matrix_unit
from .forms import EpsForm, gram_matrix, is_delta_fixed, lie_basis, nilpotent_exp, pll_star, star
from .orbits import (
    OrbitRecord,
    build_mgamma,
    build_ngamma,
    enumerate_symmetric_orbits,
    record_for,
    orbit_dim_A,
    orbit_dim_eps,
    rational_forms,
    stabilizer_table_closed_form,
)
from .patterns import RankProfile, corner_ranks, corner_ranks_rows

Group = Literal["A", "EPS"]
LEQ, NLEQ, UNDECIDED = "LEQ", "NLEQ", "UNDECIDED"


@dataclass(frozen=True)
class Budget:
    trials: int = 20000
    max_exponent: int = 3
    max_steps: int = 3


DEFAULT_BUDGET = Budget()
DEFAULT_SEED = 2024


# certificates


@dataclass(frozen=True)
class Step:
    """A conjugate-then-limit step, or a restart at another point of the same orbit."""

    conjugator: QMatrix | None = field(default=None, repr=False)
    cocharacter: tuple[int, ...] | None = None
    scale: int = 0
    restart: QMatrix | None = field(default=None, repr=False)

    @property
    def is_restart(self) -> bool:
        return self.restart is not None


@dataclass(frozen=True)
class CurveCertificate:
    group: str
    steps: tuple[Step, ...]
    start: QMatrix = field(repr=False)
    claimed_limit: QMatrix = field(repr=False)

    def to_json(self) -> dict:
        out = []
        for s in self.steps:
            if s.is_restart:
                out.append({"restart": _int_rows(s.restart)})
            else:
                out.append({"U": _int_rows(s.conjugator), "d": list(s.cocharacter), "scale": s.scale})
        return {"group": self.group, "start": _int_rows(self.start),
                "limit": _int_rows(self.claimed_limit), "steps": out}


def _int_rows(m: QMatrix) -> list[list]:
    return [[int(x) if x.denominator == 1 else str(x) for x in row] for row in m.to_rows()]


def trivial_certificate(a: QMatrix, group: str) -> CurveCertificate:
    return CurveCertificate(group, (), a, a)


def compose(first: CurveCertificate, second: CurveCertificate) -> CurveCertificate:
    """first then second; a restart step bridges first's limit to second's start."""
    if not second.steps:
        return first
    steps = first.steps + (Step(restart=second.start),) + second.steps
    return CurveCertificate(first.group, steps, first.start, second.claimed_limit)


def cocharacter_limit(x: QMatrix, d, scale: int = 0) -> QMatrix | None:
    """lim_{t->0} t^scale diag(t^d) x diag(t^-d), or None when some entry blows up.

    Entry (i, j) scales as t^(d_i - d_j + scale).  The extra scaling stays
    inside the orbit because 2-nilpotent Borel orbits are cones: the torus
    rescales the arcs of a link pattern independently.
    """
    n = x.rows
    out = [Fraction(0)] * (n * n)
    for (i, j) in x.nonzero_positions():
        e = d[i] - d[j] + scale
        if e < 0:
            return None
        if e == 0:
            out[i * n + j] = x[i, j]
    return QMatrix(n, n, tuple(out))


def lowest_weight_scale(x: QMatrix, d) -> int:
    """The scaling exponent for which the limit exists and keeps the lowest-weight part."""
    return max((d[j] - d[i] for (i, j) in x.nonzero_positions()), default=0)


def _same_orbit(a: QMatrix, b: QMatrix, group: str, form: EpsForm | None) -> bool:
    if corner_ranks(a) != corner_ranks(b) or not (b @ b).is_zero():
        return False
    return group == "A" or is_delta_fixed(b, form)


def verify_certificate(cert: CurveCertificate, form: EpsForm | None = None) -> QMatrix:
    """Recompute every step exactly; returns the limit or raises InvalidCertificate."""
    if cert.group == "EPS" and form is None:
        raise InvalidCertificate("EPS certificates need the form")
    n = cert.start.rows
    current = cert.start
    for k, step in enumerate(cert.steps):
        if step.is_restart:
            if not _same_orbit(current, step.restart, cert.group, form):
                raise InvalidCertificate(f"step {k}: restart leaves the orbit")
            current = step.restart
            continue
        u, d = step.conjugator, step.cocharacter
        if not u.is_upper_triangular() or any(u[i, i] != 1 for i in range(n)):
            raise InvalidCertificate(f"step {k}: conjugator is not unipotent upper-triangular")
        if len(d) != n:
            raise InvalidCertificate(f"step {k}: cocharacter has wrong length")
        if cert.group == "EPS":
            if star(u, form) @ u != QMatrix.identity(n):
                raise InvalidCertificate(f"step {k}: conjugator is not an isometry")
            if any(d[i] != -d[n - 1 - i] for i in range(n)):
                raise InvalidCertificate(f"step {k}: cocharacter is not in the isometry torus")
        lim = cocharacter_limit(u @ current @ u.inverse(), d, step.scale)
        if lim is None:
            raise InvalidCertificate(f"step {k}: limit does not exist")
        current = lim
    if current != cert.claimed_limit:
        raise InvalidCertificate("final limit differs from the claimed limit")
    return current


def certifies(cert: CurveCertificate, target: OrbitRecord, form: EpsForm | None = None) -> bool:
    """True iff the certificate verifies and ends in the orbit of ``target``."""
    try:
        lim = verify_certificate(cert, form)
    except InvalidCertificate:
        return False
    return _same_orbit(target.matrix(cert.group), lim, cert.group, form)


# invariants


@dataclass(frozen=True)
class Verdict:
    possible: bool
    reason: str = ""


def invariant_leq(src: OrbitRecord, dst: OrbitRecord, group: str) -> Verdict:
    """Necessary conditions for dst to lie in the closure of the orbit of src."""
    if src.pattern == dst.pattern:
        return Verdict(True)
    excess = dst.profile.first_excess(src.profile)
    if excess is not None:
        i, j = excess
        return Verdict(False, f"corner rank q({i},{j}) {dst.profile(i, j)} > {src.profile(i, j)}")
    if dst.dim(group) >= src.dim(group):
        return Verdict(False, f"dimension {dst.dim(group)} >= {src.dim(group)}")
    if group == "EPS" and dst.dim_orbit >= src.dim_orbit:
        # a symmetric degeneration is in particular a type-A one
        return Verdict(False, f"type-A dimension {dst.dim_orbit} >= {src.dim_orbit}")
    if group == "EPS" and has_twisted_flag(src.n, src.symmetric.epsilon):
        excess = twisted_profile(dst).first_excess(twisted_profile(src))
        if excess is not None:
            return Verdict(False, f"twisted corner rank q'({excess[0]},{excess[1]})")
    return Verdict(True)


def has_twisted_flag(n: int, epsilon: int) -> bool:
    """In even orthogonal type B(eps) also fixes the flag with e_l and e_l* swapped."""
    return epsilon == 1 and n % 2 == 0


def twisted_profile(rec: OrbitRecord) -> RankProfile:
    """Corner ranks of P X P with P = P_(l l*); B(eps)-invariant when has_twisted_flag."""
    n = rec.n
    p = pll_star(n, n // 2)
    return corner_ranks(p @ rec.matrix("EPS") @ p)


# curve search


def _root_elements(n: int, group: str, form: EpsForm | None) -> list[QMatrix]:
    if group == "A":
        return [matrix_unit(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return [b for b in lie_basis("B_EPS", n, form).basis if all(b[i, i] == 0 for i in range(n))]


def _sample_cocharacter(n: int, group: str, m: int, rng: random.Random) -> tuple[int, ...]:
    if group == "A":
        return tuple(rng.randint(-m, m) for _ in range(n))
    d = [0] * n
    for i in range(n // 2):
        d[i] = rng.randint(-m, m)
        d[n - 1 - i] = -d[i]
    return tuple(d)


def _zero_certificate(start: QMatrix, group: str) -> CurveCertificate:
    n = start.rows
    step = Step(QMatrix.identity(n), (0,) * n, lowest_weight_scale(start, (0,) * n) + 1)
    return CurveCertificate(group, (step,), start, QMatrix.zeros(n))


# the search runs modulo a large prime for speed; hits are replayed exactly
SEARCH_PRIME = 2_147_483_647
COEFFS = (1, -1, 2, -2)
MEMO_LIMIT = 50_000


def _mod_entries(m: QMatrix, p: int) -> list[int]:
    return [x.numerator * pow(x.denominator, -1, p) % p for x in m.entries]


def _mul_mod(a: list[int], b: list[int], n: int, p: int) -> list[int]:
    out = [0] * (n * n)
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for k, aik in enumerate(row):
            if aik:
                bk = b[k * n:(k + 1) * n]
                base = i * n
                for j in range(n):
                    if bk[j]:
                        out[base + j] += aik * bk[j]
    return [x % p for x in out]


def _limit_mod(x: list[int], n: int, d) -> list[int]:
    k = max((d[i % n] - d[i // n] for i, v in enumerate(x) if v), default=0)
    return [v if v and d[i // n] - d[i % n] + k == 0 else 0 for i, v in enumerate(x)]


class _RootTable:
    """exp(c x) and exp(-c x) for every root element x and small coefficient c."""

    def __init__(self, roots: list[QMatrix], p: int):
        self.exact, self.modp = [], []
        for r in roots:
            for c in COEFFS:
                e, e_inv = nilpotent_exp(r * c), nilpotent_exp(r * (-c))
                self.exact.append((e, e_inv))
                self.modp.append((_mod_entries(e, p), _mod_entries(e_inv, p)))


def _replay(start: QMatrix, entry: QMatrix, plan, table: _RootTable,
            group: str) -> CurveCertificate | None:
    n = start.rows
    current, steps = entry, []
    if entry != start:
        steps.append(Step(restart=entry))
    for choices, d in plan:
        u = QMatrix.identity(n)
        for c in choices:
            u = u @ table.exact[c][0]
        x = u @ current @ u.inverse()
        k = lowest_weight_scale(x, d)
        current = cocharacter_limit(x, d, k)
        steps.append(Step(u, d, k))
    return CurveCertificate(group, tuple(steps), start, current)


def curve_search(start: QMatrix, target: OrbitRecord, group: str,
                 budget: Budget = DEFAULT_BUDGET, seed: int | str = DEFAULT_SEED,
                 form: EpsForm | None = None,
                 entries: list[QMatrix] | None = None) -> CurveCertificate | None:
    """Randomized search for a verified curve certificate from start into target's orbit.

    Each trial chains up to ``max_steps`` steps; a step conjugates by a
    product of one to three root exponentials and keeps the lowest-weight
    part for a random cocharacter.  Candidates are found modulo a large
    prime and then recomputed and verified over the rationals.  Returns None
    when the budget runs out, which is not evidence of non-degeneration.

    ``entries`` are further points of the start orbit (checked on
    verification through a restart step) from which trials may begin.
    """
    n = start.rows
    goal = target.profile
    if _same_orbit(target.matrix(group), start, group, form):
        return trivial_certificate(start, group)
    if not any(any(row) for row in goal.q):
        cert = _zero_certificate(start, group)
        return cert if certifies(cert, target, form) else None
    roots = _root_elements(n, group, form)
    if not roots:
        return None
    p = SEARCH_PRIME
    table = _RootTable(roots, p)
    identity = _mod_entries(QMatrix.identity(n), p)
    entry_points = [start] + [e for e in (entries or []) if e != start]
    entry_mod = [_mod_entries(e, p) for e in entry_points]
    rng = random.Random(str(seed))
    conjugators: dict[tuple[int, ...], tuple[list[int], list[int]]] = {}
    profiles: dict[tuple[int, ...], RankProfile] = {}
    conjugates: dict[tuple, list[int]] = {}
    for trial in range(budget.trials):
        which = trial % len(entry_points)
        current, plan = entry_mod[which], []
        for _ in range(budget.max_steps):
            choices = tuple(rng.randrange(len(table.modp)) for _ in range(rng.randint(1, 3)))
            if choices not in conjugators:
                u, u_inv = identity, identity
                for c in choices:
                    e, e_inv = table.modp[c]
                    u, u_inv = _mul_mod(u, e, n, p), _mul_mod(e_inv, u_inv, n, p)
                conjugators[choices] = (u, u_inv)
            ckey = (choices, tuple(current))
            x = conjugates.get(ckey)
            if x is None:
                u, u_inv = conjugators[choices]
                x = _mul_mod(_mul_mod(u, current, n, p), u_inv, n, p)
                if len(conjugates) < MEMO_LIMIT:
                    conjugates[ckey] = x
            d = _sample_cocharacter(n, group, budget.max_exponent, rng)
            lim = _limit_mod(x, n, d)
            plan.append((choices, d))
            key = tuple(lim)
            prof = profiles.get(key)
            if prof is None:
                prof = corner_ranks_rows([lim[i * n:(i + 1) * n] for i in range(n)], modulus=p)
                profiles[key] = prof
            if prof == goal:
                cert = _replay(start, entry_points[which], plan, table, group)
                if certifies(cert, target, form):
                    return cert
                break
            if not goal <= prof:
                break
            current = lim
    return None


# the poset


@dataclass
class Relation:
    status: str
    reason: str = ""
    certificate: CurveCertificate | None = None
    assumed: bool = False


@dataclass
class ClosurePoset:
    orbits: list[OrbitRecord]
    group: str
    relation: dict[tuple[int, int], Relation]
    epsilon: int | None = None
    assume_typeA_complete: bool = True

    def status(self, i: int, j: int) -> str:
        return self.relation[(i, j)].status

    def leq(self, i: int, j: int) -> bool:
        """True iff orbit j lies in the closure of orbit i."""
        return self.status(i, j) == LEQ

    def undecided(self) -> list[tuple[int, int]]:
        return [p for p, r in sorted(self.relation.items()) if r.status == UNDECIDED]

    def index_of(self, pattern) -> int:
        return next(k for k, o in enumerate(self.orbits) if o.pattern == pattern)


def _transitive_closure(rel: dict[tuple[int, int], Relation], size: int):
    changed = True
    while changed:
        changed = False
        for k in range(size):
            for i in range(size):
                if i == k or rel[(i, k)].status != LEQ:
                    continue
                for j in range(size):
                    if j in (i, k) or rel[(k, j)].status != LEQ or rel[(i, j)].status == LEQ:
                        continue
                    if rel[(i, j)].status == NLEQ:
                        raise RuntimeError("certified relation contradicts an invariant")
                    a, b = rel[(i, k)], rel[(k, j)]
                    cert = (compose(a.certificate, b.certificate)
                            if a.certificate and b.certificate else None)
                    rel[(i, j)] = Relation(LEQ, "transitivity", cert, a.assumed or b.assumed)
                    changed = True


def closure_poset(orbits: list[OrbitRecord], group: str, budget: Budget = DEFAULT_BUDGET,
                  seed: int = DEFAULT_SEED, form: EpsForm | None = None,
                  assume_typeA_complete: bool = True, certify: bool = False) -> ClosurePoset:
    size = len(orbits)
    rel: dict[tuple[int, int], Relation] = {}
    possible = []
    for i, src in enumerate(orbits):
        for j, dst in enumerate(orbits):
            if i == j:
                rel[(i, j)] = Relation(LEQ, "reflexive", trivial_certificate(src.matrix(group), group))
                continue
            v = invariant_leq(src, dst, group)
            if v.possible:
                rel[(i, j)] = Relation(UNDECIDED)
                possible.append((i, j))
            else:
                rel[(i, j)] = Relation(NLEQ, v.reason)
    assume = group == "A" and assume_typeA_complete
    search = group == "EPS" or certify
    entries = [rational_forms(o.pattern, form) if group == "EPS" else [] for o in orbits]
    if search:
        pset = set(possible)
        covers = [(i, j) for (i, j) in possible
                  if not any((i, k) in pset and (k, j) in pset for k in range(size))]
        rest = [p for p in possible if p not in covers]
        for batch in (covers, rest):
            for (i, j) in batch:
                if rel[(i, j)].status != UNDECIDED:
                    continue
                cert = curve_search(orbits[i].matrix(group), orbits[j], group, budget,
                                    f"{seed}:{i}:{j}", form, entries[i])
                if cert is not None:
                    rel[(i, j)] = Relation(LEQ, "curve certificate", cert)
            _transitive_closure(rel, size)
    if assume:
        for p in possible:
            if rel[p].status == UNDECIDED:
                rel[p] = Relation(LEQ, "assumed: type-A invariants complete", assumed=True)
    _transitive_closure(rel, size)
    eps = orbits[0].symmetric.epsilon if orbits and orbits[0].symmetric else None
    return ClosurePoset(list(orbits), group, rel, eps, assume_typeA_complete)


def hasse_edges(poset: ClosurePoset) -> list[tuple[int, int]]:
    """Transitive reduction of LEQ as (cover, covered) index pairs; UNDECIDED pairs are ignored."""
    size = len(poset.orbits)
    out = []
    for i in range(size):
        for j in range(size):
            if i == j or not poset.leq(i, j):
                continue
            if any(k not in (i, j) and poset.leq(i, k) and poset.leq(k, j) for k in range(size)):
                continue
            out.append((i, j))
    return out


def _node_label(rec: OrbitRecord, group: str) -> str:
    label = f"{rec.pattern}\\ndim={rec.dim_orbit}"
    if group == "EPS":
        label += f"\\ndim_eps={rec.symmetric.dim_orbit_eps}"
    return label


def poset_dot(poset: ClosurePoset, violations: list[tuple[int, int]] = (), name: str = "closure") -> str:
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for k, rec in enumerate(poset.orbits):
        lines.append(f'  o{k} [label="{_node_label(rec, poset.group)}"];')
    for i, j in hasse_edges(poset):
        lines.append(f"  o{i} -> o{j};")
    for i, j in violations:
        lines.append(f'  o{i} -> o{j} [color=red, style=dashed, label="type A only"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_json(poset: ClosurePoset) -> dict:
    pats = [str(o.pattern) for o in poset.orbits]
    rels = []
    for (i, j), r in sorted(poset.relation.items()):
        if i == j:
            continue
        entry = {"from": pats[i], "to": pats[j], "status": r.status}
        if r.reason:
            entry["reason"] = r.reason
        if r.certificate is not None:
            entry["certificate_steps"] = len(r.certificate.steps)
        if r.assumed:
            entry["assumed"] = True
        rels.append(entry)
    return {"group": poset.group, "n": poset.orbits[0].n if poset.orbits else 0,
            "epsilon": poset.epsilon, "assume_typeA_complete": poset.assume_typeA_complete,
            "orbits": [o.to_json() for o in poset.orbits], "relations": rels,
            "hasse": [[pats[i], pats[j]] for i, j in hasse_edges(poset)],
            "undecided": [[pats[i], pats[j]] for i, j in poset.undecided()]}


# induced check


@dataclass
class InducedReport:
    n: int
    epsilon: int
    violations: list[tuple[str, str]]
    undecided: list[tuple[str, str]]
    consistent: list[tuple[str, str]]
    type_a: ClosurePoset = field(repr=False)
    symmetric: ClosurePoset = field(repr=False)

    def violation_indices(self) -> list[tuple[int, int]]:
        idx = {str(o.pattern): k for k, o in enumerate(self.symmetric.orbits)}
        return [(idx[a], idx[b]) for a, b in self.violations]

    def to_json(self) -> dict:
        return {"n": self.n, "epsilon": self.epsilon,
                "induced": not self.violations and not self.undecided,
                "violations": [list(p) for p in self.violations],
                "undecided": [list(p) for p in self.undecided],
                "consistent": [list(p) for p in self.consistent]}


def induced_check(n: int, epsilon: int, budget: Budget = DEFAULT_BUDGET, seed: int = DEFAULT_SEED,
                  assume_typeA_complete: bool = True, certify: bool = False) -> InducedReport:
    """Compare the B(eps)-closure order with the type-A order on symmetric orbits."""
    form = gram_matrix(n, epsilon)
    records = enumerate_symmetric_orbits(n, epsilon)
    pa = closure_poset(records, "A", budget, seed, None, assume_typeA_complete, certify)
    pe = closure_poset(records, "EPS", budget, seed, form)
    viol, und, cons = [], [], []
    for i, src in enumerate(records):
        for j, dst in enumerate(records):
            if i == j or not pa.leq(i, j):
                continue
            pair = (str(src.pattern), str(dst.pattern))
            status = pe.status(i, j)
            (viol if status == NLEQ else cons if status == LEQ else und).append(pair)
    return InducedReport(n, epsilon, viol, und, cons, pa, pe)


# the type D counterexample


def counterexample_report(l: int, budget: Budget = DEFAULT_BUDGET, seed: int = DEFAULT_SEED,
                          search_symmetric: bool = True) -> dict:
    """M_gamma and N_gamma: degenerate in type A, incomparable in type D."""
    n = 2 * l
    m, nn = build_mgamma(n, l, 1), build_ngamma(n, l)
    rec_n = record_for(nn)
    cert = curve_search(m, rec_n, "A", budget, seed)
    cert_ok = cert is not None and certifies(cert, rec_n)
    dm, dn = orbit_dim_A(m)[0], orbit_dim_A(nn)[0]

    form_d = gram_matrix(n, 1)
    sm, sn = record_for(m, form_d), record_for(nn, form_d)
    dmd, dnd = sm.symmetric.dim_orbit_eps, sn.symmetric.dim_orbit_eps
    fwd, back = invariant_leq(sm, sn, "EPS"), invariant_leq(sn, sm, "EPS")

    closed = stabilizer_table_closed_form(l)
    report = {
        "l": l, "n": n,
        "type_A": {"dim_orbit_M": dm, "dim_orbit_N": dn,
                   "expected": [closed["A"]["orbit_M"], closed["A"]["orbit_N"]],
                   "certificate_found": cert_ok,
                   "certificate_steps": len(cert.steps) if cert else None},
        "type_D": {"dim_orbit_M": dmd, "dim_orbit_N": dnd, "expected": 3 * (l - 1) - 1,
                   "M_to_N": fwd.reason or "possible", "N_to_M": back.reason or "possible"},
    }
    contrast = {}
    for kind, nk, eps in (("B", 2 * l + 1, 1), ("C", 2 * l, -1)):
        form = gram_matrix(nk, eps)
        mk, nk_ = build_mgamma(nk, l, eps), build_ngamma(nk, l)
        entry = {"n": nk, "epsilon": eps, "dim_orbit_M": orbit_dim_eps(mk, form)[0],
                 "dim_orbit_N": orbit_dim_eps(nk_, form)[0],
                 "expected": [closed[kind]["orbit_M"], closed[kind]["orbit_N"]]}
        if search_symmetric:
            target = record_for(nk_, form)
            c = curve_search(mk, target, "EPS", budget, seed, form)
            entry["symmetric_certificate_found"] = c is not None and certifies(c, target, form)
        contrast[kind] = entry
    report["contrast"] = contrast
    not_induced = cert_ok and not fwd.possible and not back.possible
    report["verdict"] = "NOT_INDUCED" if not_induced else "UNDETERMINED"
    return report
