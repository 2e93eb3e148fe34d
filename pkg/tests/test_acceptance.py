"""Acceptance criteria 1-10, one PASS/FAIL line each (also shown in the pytest summary)."""

from __future__ import annotations

import random
import time

from conftest import ACCEPTANCE_LINES
from symdeg import affine, closure, orbits, quiver
from symdeg.census import ff_profile, ffq_orbit_census, fixed_square_zero
from symdeg.exact import QMatrix
from symdeg.forms import gram_matrix, is_delta_fixed, random_borel, random_borel_eps, star
from symdeg.patterns import (corner_ranks, enumerate_patterns, pattern_count, pattern_from_profile,
                             pattern_profile, pattern_to_matrix)
from test_closure import random_cocharacter, random_unipotent
from test_patterns import brute_force_square_zero_partial_permutations

START: list[float] = []  # wall-clock start of the acceptance run


def record(num: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_stabilizer_table():
    t0 = time.perf_counter()
    START.append(t0)
    bad = []
    for l in (2, 3, 4):
        computed, closed = orbits.stabilizer_table_computed(l), orbits.stabilizer_table_closed_form(l)
        bad += [f"l={l} {k}.{c}" for k in "ABCD" for c in closed[k] if computed[k][c] != closed[k][c]]
    elapsed = time.perf_counter() - t0
    record(1, "stabilizer/orbit table, l=2,3,4, every cell exact", not bad and elapsed < 5,
           f"{48 - len(bad)}/48 cells, {elapsed:.2f}s" + (f", mismatches {bad}" if bad else ""))


def test_criterion_02_quiver_side():
    bad = []
    for l in (2, 3):
        closed = orbits.stabilizer_table_closed_form(l)
        n = 2 * l
        if quiver.hom_dim(quiver.build_M(l, n, 1), quiver.build_M(l, n, 1)) != closed["A"]["stab_M"]:
            bad.append(f"l={l} End(M)")
        if quiver.hom_dim(quiver.build_N(l, n), quiver.build_N(l, n)) != closed["A"]["stab_N"]:
            bad.append(f"l={l} End(N)")
        for kind in "BCD":
            nk, eps = orbits.type_setting(kind, l)
            if quiver.symmetric_stab_dim(quiver.build_M(l, nk, eps), eps) != closed[kind]["stab_M"]:
                bad.append(f"l={l} {kind} stab M")
            if quiver.symmetric_stab_dim(quiver.build_N(l, nk), eps) != closed[kind]["stab_N"]:
                bad.append(f"l={l} {kind} stab N")
            dim_g = 2 * sum(i * i for i in range(1, l + 1)) + nk * nk
            if 2 * quiver.graded_isometry_dim(l, nk, eps) != dim_g - eps * nk:
                bad.append(f"l={l} {kind} isometry dim")
    record(2, "quiver-side stabilizers and isometry group dimensions, l=2,3", not bad,
           "all integer-exact" if not bad else f"mismatches {bad}")


def test_criterion_03_cross_module():
    bad = []
    for l in (2, 3, 4):
        n = 2 * l
        if quiver.hom_dim(quiver.build_M(l, n, 1), quiver.build_M(l, n, 1)) != \
                orbits.orbit_dim_A(orbits.build_mgamma(n, l, 1))[1]:
            bad.append(f"l={l} M")
        if quiver.hom_dim(quiver.build_N(l, n), quiver.build_N(l, n)) != \
                orbits.orbit_dim_A(orbits.build_ngamma(n, l))[1]:
            bad.append(f"l={l} N")
    record(3, "End dimension equals Borel stabilizer dimension, l=2,3,4", not bad,
           "quiver and Borel sides agree" if not bad else f"mismatches {bad}")


def test_criterion_04_type_d_counterexample():
    parts = []
    for l in (2, 3):
        rep = closure.counterexample_report(l, search_symmetric=False)
        a_ok = rep["type_A"]["certificate_found"]
        d = rep["type_D"]
        d_ok = (d["dim_orbit_M"] == d["dim_orbit_N"] and d["M_to_N"] != "possible"
                and d["N_to_M"] != "possible")
        n = 2 * l
        pm = str(orbits.record_for(orbits.build_mgamma(n, l, 1)).pattern)
        pn = str(orbits.record_for(orbits.build_ngamma(n, l)).pattern)
        ind = closure.induced_check(n, 1)
        c_ok = (pm, pn) in ind.violations
        parts.append((l, a_ok, d_ok, c_ok))
    ok = all(a and d and c for _, a, d, c in parts)
    record(4, "type A certificate M->N, type D incomparable, induced check flags (M, N)", ok,
           "; ".join(f"l={l}: cert={a} incomparable={d} violation={c}" for l, a, d, c in parts))


def test_criterion_05_positive_cases():
    out = []
    for n, eps in ((5, 1), (4, -1)):
        rep = closure.induced_check(n, eps)
        out.append((n, eps, len(rep.violations), len(rep.undecided), len(rep.consistent)))
    ok = all(v == 0 and u == 0 for _, _, v, u, _ in out)
    record(5, "types B (n=5) and C (n=4) induced, default budget seed 2024", ok,
           "; ".join(f"({n},{e:+d}): violations={v} undecided={u} consistent={c}"
                     for n, e, v, u, c in out))


def test_criterion_06_affine_weyl():
    t0 = time.perf_counter()
    details, ok = [], True
    for l in (4, 5):
        rep = affine.length_identity_check(l)
        good = (rep["ok"] and rep["length_M"] == 12 * (l - 1) and rep["length_N"] == 12 * (l - 1) - 2
                and rep["conjugation_identity"] and rep["bruhat_N_leq_M"] and not rep["bruhat_M_leq_N"]
                and rep["expected_M"] == rep["length_M"] and rep["expected_N"] == rep["length_N"])
        ok &= good
        details.append(f"l={l}: lengths {rep['length_M']}/{rep['length_N']}")
    elapsed = time.perf_counter() - t0
    record(6, "affine Weyl lengths, conjugation identity, Bruhat order", ok and elapsed < 10,
           "; ".join(details) + f", {elapsed:.2f}s")


def test_criterion_07_enumeration():
    counts = {n: len(enumerate_patterns(n)) for n in range(2, 7)}
    brute = {n: brute_force_square_zero_partial_permutations(n) for n in range(2, 7)}
    formula = {n: pattern_count(n) for n in range(2, 7)}
    round_trip = all(pattern_from_profile(pattern_profile(p)) == p
                     for n in range(1, 6) for p in enumerate_patterns(n))
    ok = counts == brute == formula and list(counts.values()) == [3, 7, 25, 81, 331] and round_trip
    record(7, "pattern counts n=2..6 and profile round trip n<=5", ok,
           f"counts {list(counts.values())}, brute force agrees={counts == brute}, "
           f"round trip={round_trip}")


def test_criterion_08_finite_field_oracle():
    details, ok = [], True
    for n, eps in ((2, 1), (2, -1), (3, 1), (4, 1), (4, -1)):
        realized = {ff_profile(x, 3) for x in fixed_square_zero(n, eps, 3)}
        records = orbits.enumerate_symmetric_orbits(n, eps)
        expected = {r.profile for r in records}
        ok &= realized == expected
        f3_orbits = sum(r.orbit_count for r in ffq_orbit_census(n, eps, 3))
        details.append(f"({n},{eps:+d}) profiles {len(realized)}={len(expected)}, "
                       f"F_3-orbits {f3_orbits} vs {len(records)}")
    record(8, "F_3 profile sets equal symmetric orbit profiles", ok, "; ".join(details))


def test_criterion_09_hom_order():
    m, n = quiver.build_M(2, 4, 1), quiver.build_N(2, 4)
    strings = quiver.enumerate_strings(m.algebra)
    mn, nm = quiver.hom_order_leq(m, n, strings), quiver.hom_order_leq(n, m, strings)
    rec_m = orbits.record_for(orbits.build_mgamma(4, 2, 1))
    rec_n = orbits.record_for(orbits.build_ngamma(4, 2))
    cert = closure.curve_search(rec_m.representative, rec_n, "A")
    borel_mn = cert is not None and closure.certifies(cert, rec_n)
    borel_nm = closure.invariant_leq(rec_n, rec_m, "A").possible
    ok = mn and not nm and borel_mn == mn and borel_nm == nm
    record(9, "Hom-order M<=N, not N<=M, matching the Borel closure", ok,
           f"{len(strings)} strings; Hom: M<=N {mn}, N<=M {nm}; Borel: M->N {borel_mn}, "
           f"N->M possible {borel_nm}")


def _property_battery(cases: int = 100) -> dict[str, bool]:
    rng = random.Random(2024)
    res = {}
    pats = [p for n in range(2, 6) for p in enumerate_patterns(n)]
    ok = True
    for _ in range(cases):
        p = rng.choice(pats)
        b = random_borel(p.n, rng)
        ok &= corner_ranks(b @ pattern_to_matrix(p) @ b.inverse()) == pattern_profile(p)
    res["corner ranks B-invariant"] = ok
    ok = True
    for _ in range(cases):
        n, eps = rng.choice([(2, -1), (4, 1), (4, -1), (5, 1), (6, -1)])
        form = gram_matrix(n, eps)
        r = rng.choice(orbits.enumerate_symmetric_orbits(n, eps))
        b = random_borel_eps(form, rng)
        y = b @ r.symmetric.fixed_representative @ b.inverse()
        ok &= is_delta_fixed(y, form) and corner_ranks(y) == r.profile
    res["B(eps) preserves fixed locus and profile"] = ok
    ok = True
    for _ in range(cases):
        n, eps = rng.choice([(3, 1), (4, 1), (4, -1), (6, -1)])
        form = gram_matrix(n, eps)
        a = QMatrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        ok &= star(star(a, form), form) == a
    res["adjoint is an involution"] = ok
    ok = True
    for _ in range(cases):
        w = affine.random_element(rng.randint(2, 6), rng, rng.randint(0, 15))
        ok &= affine.length(w) == affine.length_by_word(w)
    res["affine length = reduced word length"] = ok
    ok = True
    for _ in range(cases):
        n = rng.randint(2, 5)
        rec = rng.choice(orbits.enumerate_orbits(n))
        u, d = random_unipotent(n, rng), random_cocharacter(n, rng, False)
        x = u @ rec.representative @ u.inverse()
        k = closure.lowest_weight_scale(x, d)
        lim = closure.cocharacter_limit(x, d, k)
        cert = closure.CurveCertificate("A", (closure.Step(u, d, k),), rec.representative, lim)
        ok &= closure.verify_certificate(cert) == lim and corner_ranks(lim) <= rec.profile
    res["curve limits verify and lower corner ranks"] = ok
    ok = True
    strings = quiver.enumerate_strings(quiver.build_algebra(2, 4))
    for _ in range(cases):
        s, t = rng.choice(strings).rep(), rng.choice(strings).rep()
        ok &= quiver.hom_dim(quiver.direct_sum(s, t), s) == quiver.hom_dim(s, s) + quiver.hom_dim(t, s)
    res["Hom additive on string modules"] = ok
    return res


def test_criterion_10_properties_and_time():
    res = _property_battery()
    elapsed = time.perf_counter() - (START[0] if START else time.perf_counter())
    ok = all(res.values()) and elapsed < 120
    failed = [k for k, v in res.items() if not v]
    record(10, "seeded property battery (100 cases each) and total acceptance time", ok,
           f"{len(res) - len(failed)}/{len(res)} families pass"
           + (f", failed {failed}" if failed else "") + f", total {elapsed:.1f}s")
