"""Command-line interface: one subcommand per reproduction.

Exit codes: 0 success, 2 usage error, 3 undecided pairs, 4 mismatch.
All output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import affine, closure, orbits, quiver
from .errors import SymdegError
from .forms import gram_matrix

EXIT_OK, EXIT_USAGE, EXIT_UNDECIDED, EXIT_MISMATCH = 0, 2, 3, 4


def _epsilon(text: str) -> int:
    value = int(text)
    if value not in (1, -1):
        raise argparse.ArgumentTypeError("epsilon must be +1 or -1")
    return value


def _budget(args) -> closure.Budget:
    return closure.Budget(args.trials, args.max_exponent, args.max_steps)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


# subcommands


def cmd_orbits(args) -> int:
    if args.epsilon is None:
        records = orbits.enumerate_orbits(args.n)
    else:
        records = orbits.enumerate_symmetric_orbits(args.n, args.epsilon)
    if args.format == "json":
        out = [r.to_json() for r in records]
        if args.epsilon is not None and args.omitted:
            out = {"orbits": out, "omitted": [str(p) for p in
                                              orbits.omitted_symmetric_patterns(args.n, args.epsilon)]}
        _emit(out)
    else:
        for r in records:
            line = f"{r.pattern}\tdim={r.dim_orbit}\tstab={r.dim_stab}"
            if r.symmetric:
                line += f"\tdim_eps={r.symmetric.dim_orbit_eps}\tstab_eps={r.symmetric.dim_stab_eps}"
            print(line)
        if args.epsilon is not None and args.omitted:
            for p in orbits.omitted_symmetric_patterns(args.n, args.epsilon):
                print(f"omitted\t{p}")
    return EXIT_OK


def cmd_closure(args) -> int:
    if args.epsilon is None:
        poset = closure.closure_poset(orbits.enumerate_orbits(args.n), "A", _budget(args), args.seed,
                                      None, args.assume_typeA_complete, args.certify)
    else:
        poset = closure.closure_poset(orbits.enumerate_symmetric_orbits(args.n, args.epsilon), "EPS",
                                      _budget(args), args.seed, gram_matrix(args.n, args.epsilon))
    undecided = poset.undecided()
    if args.format == "dot":
        sys.stdout.write(closure.poset_dot(poset))
    elif args.format == "json":
        _emit(closure.poset_json(poset))
    else:
        pats = [str(o.pattern) for o in poset.orbits]
        for i, j in closure.hasse_edges(poset):
            print(f"{pats[i]} > {pats[j]}")
        for i, j in undecided:
            print(f"undecided\t{pats[i]} -> {pats[j]}")
    if undecided:
        print(f"{len(undecided)} undecided pair(s)", file=sys.stderr)
        if not args.allow_undecided:
            return EXIT_UNDECIDED
    return EXIT_OK


def cmd_induced(args) -> int:
    report = closure.induced_check(args.n, args.epsilon, _budget(args), args.seed,
                                   args.assume_typeA_complete, args.certify)
    if args.format == "dot":
        sys.stdout.write(closure.poset_dot(report.symmetric, report.violation_indices(), "induced"))
    elif args.format == "json":
        _emit(report.to_json())
    else:
        for kind, pairs in (("violation", report.violations), ("undecided", report.undecided),
                            ("consistent", report.consistent)):
            for a, b in pairs:
                print(f"{kind}\t{a} -> {b}")
        print(f"violations={len(report.violations)} undecided={len(report.undecided)} "
              f"consistent={len(report.consistent)}")
    if args.expect_violation:
        return EXIT_OK if report.violations else EXIT_MISMATCH
    if report.violations:
        return EXIT_MISMATCH
    if report.undecided and not args.allow_undecided:
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_counterexample(args) -> int:
    report = closure.counterexample_report(args.l, _budget(args), args.seed)
    _emit(report)
    a, d = report["type_A"], report["type_D"]
    ok = (report["verdict"] == "NOT_INDUCED"
          and [a["dim_orbit_M"], a["dim_orbit_N"]] == a["expected"]
          and d["dim_orbit_M"] == d["dim_orbit_N"] == d["expected"]
          and all([c["dim_orbit_M"], c["dim_orbit_N"]] == c["expected"]
                  for c in report["contrast"].values()))
    return EXIT_OK if ok else EXIT_MISMATCH


def tables_report(l_max: int) -> dict:
    """Every cell of the stabilizer tables, computed and closed-form, for l = 2..l_max."""
    rows = []
    for l in range(2, l_max + 1):
        computed, closed = orbits.stabilizer_table_computed(l), orbits.stabilizer_table_closed_form(l)
        n = 2 * l
        m, nrep = quiver.build_M(l, n, 1), quiver.build_N(l, n)
        # dim GL(V) of the graded space, read off the dimension vector
        dim_g = sum(d * d for d in m.algebra.dimension_vector())
        quiver_side = {"dim_G": dim_g, "dim_G_expected": 2 * sum(i * i for i in range(1, l + 1)) + n * n,
                       "hom_MM": quiver.hom_dim(m, m), "hom_NN": quiver.hom_dim(nrep, nrep),
                       "hom_MM_expected": closed["A"]["stab_M"],
                       "hom_NN_expected": closed["A"]["stab_N"]}
        for kind in "BCD":
            nk, eps = orbits.type_setting(kind, l)
            mk, nk_rep = quiver.build_M(l, nk, eps), quiver.build_N(l, nk)
            big_g = 2 * sum(i * i for i in range(1, l + 1)) + nk * nk
            quiver_side[kind] = {
                "dim_G_eps": quiver.graded_isometry_dim(l, nk, eps),
                "dim_G_eps_expected": (big_g + nk) // 2 if eps == -1 else (big_g - nk) // 2,
                "stab_M": quiver.symmetric_stab_dim(mk, eps),
                "stab_N": quiver.symmetric_stab_dim(nk_rep, eps),
                "stab_M_expected": closed[kind]["stab_M"],
                "stab_N_expected": closed[kind]["stab_N"]}
        mismatches = [f"{k}.{c}" for k in computed for c in computed[k]
                      if computed[k][c] != closed[k][c]]
        if quiver_side["dim_G"] != quiver_side["dim_G_expected"]:
            mismatches.append("quiver.dim_G")
        if quiver_side["hom_MM"] != quiver_side["hom_MM_expected"]:
            mismatches.append("quiver.hom_MM")
        if quiver_side["hom_NN"] != quiver_side["hom_NN_expected"]:
            mismatches.append("quiver.hom_NN")
        for kind in "BCD":
            q = quiver_side[kind]
            for c in ("dim_G_eps", "stab_M", "stab_N"):
                if q[c] != q[c + "_expected"]:
                    mismatches.append(f"quiver.{kind}.{c}")
        rows.append({"l": l, "borel": computed, "closed_form": closed, "quiver": quiver_side,
                     "mismatches": mismatches})
    return {"rows": rows, "ok": all(not r["mismatches"] for r in rows)}


def cmd_tables(args) -> int:
    report = tables_report(args.l_max)
    if args.format == "json":
        _emit(report)
    else:
        for row in report["rows"]:
            print(f"l={row['l']}  dim G={row['quiver']['dim_G']}")
            for kind, cells in row["borel"].items():
                exp = row["closed_form"][kind]
                print(f"  {kind}: " + "  ".join(
                    f"{c}={v}" + ("" if v == exp[c] else f"(expected {exp[c]})")
                    for c, v in cells.items()))
            q = row["quiver"]
            print(f"  quiver: hom(M,M)={q['hom_MM']} hom(N,N)={q['hom_NN']}  " + "  ".join(
                f"{k}: dimG={q[k]['dim_G_eps']} stabM={q[k]['stab_M']} stabN={q[k]['stab_N']}"
                for k in "BCD"))
            print("  " + ("all cells match" if not row["mismatches"]
                          else "MISMATCH " + ", ".join(row["mismatches"])))
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def weyl_report(l: int) -> dict:
    report = affine.length_identity_check(l)
    report["dl_basis"] = affine.dl_basis_check(l) if l >= 3 else None
    report["all_ok"] = report["ok"] and report["dl_basis"] is not False
    return report


def cmd_weyl(args) -> int:
    report = weyl_report(args.l)
    if args.format == "json":
        _emit(report)
    else:
        print(f"sigma_M = {report['sigma_M']}  length {report['length_M']} "
              f"(expected {report['expected_M']})")
        print(f"sigma_N = {report['sigma_N']}  length {report['length_N']} "
              f"(expected {report['expected_N']})")
        print(f"s_l sigma_N s_l = sigma_M: {report['conjugation_identity']}")
        print(f"Bruhat sigma_N <= sigma_M: {report['bruhat_N_leq_M']}, "
              f"sigma_M <= sigma_N: {report['bruhat_M_leq_N']}")
        print(f"D_l basis: {report['dl_basis']}")
        if report["informational"]:
            print("note: l < 4 is outside the stated range; values are informational")
        print("OK" if report["all_ok"] else "MISMATCH")
    return EXIT_OK if report["all_ok"] else EXIT_MISMATCH


def seesaw_report(l: int, n: int, epsilon: int) -> dict:
    m, nrep, m0 = quiver.build_M(l, n, epsilon), quiver.build_N(l, n), quiver.build_M0(l, n)
    strings = quiver.enumerate_strings(m.algebra)
    return {
        "l": l, "n": n, "epsilon": epsilon,
        "dimension_vector": list(m.algebra.dimension_vector()),
        "relations": {"M": m.satisfies_relations(), "N": nrep.satisfies_relations(),
                      "M0": m0.satisfies_relations()},
        "symmetric": {"M": quiver.is_symmetric(m, epsilon), "N": quiver.is_symmetric(nrep, epsilon),
                      "M0": quiver.is_symmetric(m0, epsilon)},
        "hom": {"M,M": quiver.hom_dim(m, m), "N,N": quiver.hom_dim(nrep, nrep),
                "M0,M0": quiver.hom_dim(m0, m0), "M,N": quiver.hom_dim(m, nrep),
                "N,M": quiver.hom_dim(nrep, m)},
        "symmetric_stab": {"M": quiver.symmetric_stab_dim(m, epsilon),
                           "N": quiver.symmetric_stab_dim(nrep, epsilon)},
        "graded_isometry_dim": quiver.graded_isometry_dim(l, n, epsilon),
        "strings": len(strings),
        "hom_order": {"M<=N": quiver.hom_order_leq(m, nrep, strings),
                      "N<=M": quiver.hom_order_leq(nrep, m, strings)},
    }


def cmd_seesaw(args) -> int:
    n = args.n if args.n is not None else 2 * args.l
    report = seesaw_report(args.l, n, args.epsilon)
    if args.format == "dot" or args.dot:
        m, nrep = quiver.build_M(args.l, n, args.epsilon), quiver.build_N(args.l, n)
        if args.format != "dot":
            _emit(report)
        sys.stdout.write(quiver.coefficient_quiver_dot(m, "GammaM"))
        sys.stdout.write(quiver.coefficient_quiver_dot(nrep, "GammaN"))
    elif args.format == "json":
        _emit(report)
    else:
        for key in ("dimension_vector", "relations", "symmetric", "hom", "symmetric_stab",
                    "graded_isometry_dim", "strings", "hom_order"):
            print(f"{key}: {report[key]}")
    ok = all(report["relations"].values()) and all(report["symmetric"].values())
    return EXIT_OK if ok else EXIT_MISMATCH


# parser


def _add_budget(p: argparse.ArgumentParser) -> None:
    b = closure.DEFAULT_BUDGET
    p.add_argument("--seed", type=int, default=closure.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=b.trials)
    p.add_argument("--max-exponent", type=int, default=b.max_exponent)
    p.add_argument("--max-steps", type=int, default=b.max_steps)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdeg", description=(
        "Borel orbits of 2-nilpotent matrices, their closure orders, "
        "and the Seesaw quiver cross-checks."))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", help="list Borel orbits (type A, or symmetric with --epsilon)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_epsilon)
    p.add_argument("--omitted", action="store_true",
                   help="also list symmetric patterns without a fixed representative")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("closure", help="closure order and Hasse diagram")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_epsilon)
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--certify", action="store_true", help="search curves in type A as well")
    p.add_argument("--no-assume-typeA-complete", dest="assume_typeA_complete", action="store_false")
    p.add_argument("--allow-undecided", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("induced", help="is the symmetric closure order induced by type A?")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_epsilon, required=True)
    p.add_argument("--format", choices=("json", "dot", "text"), default="text")
    p.add_argument("--expect-violation", action="store_true")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--no-assume-typeA-complete", dest="assume_typeA_complete", action="store_false")
    p.add_argument("--allow-undecided", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_induced)

    p = sub.add_parser("counterexample", help="M_gamma, N_gamma in types A, B, C, D")
    p.add_argument("--l", type=int, required=True)
    _add_budget(p)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("tables", help="recompute the stabilizer / orbit dimension tables")
    p.add_argument("--l-max", type=int, default=4)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("weyl", help="affine Weyl group lengths and Bruhat order")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("seesaw", help="Seesaw quiver representations M, N, M0")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--epsilon", type=_epsilon, default=1)
    p.add_argument("--format", choices=("json", "dot", "text"), default="text")
    p.add_argument("--dot", action="store_true", help="also print coefficient quivers as DOT")
    p.set_defaults(func=cmd_seesaw)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SymdegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
