"""Command-line driver: computations and the named verification suites,
with machine-readable JSON reports.

Exit codes: 0 all cases pass, 1 any failed case, 2 invalid input, 3 budget
exhaustion.  Reports are byte-stable for fixed inputs and seed; wall time
is only included when --timing is passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from .chartab import SPLIT_SEED, character_table
from .classfun import (delta_basis, hc_induce, induce, inflate,
                       intertwiner_matrix, matrix_determinant,
                       parabolic_subgroup_table, springer_convolution_check,
                       trivial_character)
from .cyclo import Cyclotomic
from .fields import BudgetExceeded, enum_budget
from .groups import (GroupSpec, SUPPORTED, borel, build_group, groups_json,
                     maximal_torus, opposite_parabolic, standard_parabolic)
from .dl import (SuiteCase, dl_character_for, verify_indep_rational,
                 verify_indep_twisted, verify_orthogonality,
                 verify_springer_chars)
from .weyl import (LeviSet, all_levi_masks, parabolic_orbit_reps,
                   parabolics_with_levi, reduction_chain, root_system,
                   verify_rel_bruhat)

SCHEMA = 1


@dataclass
class SuiteReport:
    suite: str
    inputs: dict
    cases: list
    environment: dict

    def to_json(self):
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "inputs": self.inputs,
            "cases": [
                {"case": c.case_id, "status": c.status, "payload": c.payload}
                for c in self.cases
            ],
            "environment": self.environment,
        }

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.cases)


def _environment(timing=None):
    return {"seed": SPLIT_SEED, "budget": enum_budget(),
            "wall_time_ms": timing}


def _emit(report_dict, out_path):
    text = json.dumps(report_dict, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _group_from_args(args) -> "GroupSpec":
    spec = GroupSpec(args.family, args.n, args.q)
    if not spec.is_supported:
        raise ValueError(f"unsupported target {args.family}_{args.n}(F_{args.q}); "
                         f"supported: {SUPPORTED}")
    return spec


def _parse_composition(text, n):
    comp = tuple(int(x) for x in text.split(","))
    if sum(comp) != n:
        raise ValueError(f"composition {comp} does not sum to {n}")
    return comp


# ---------------------------------------------------------------------------
# suites

def suite_indep_rational(args):
    g = build_group(_group_from_args(args))
    comp = _parse_composition(args.composition, args.n)
    return SuiteReport("indep-rational",
                       {"group": g.name, "composition": list(comp)},
                       verify_indep_rational(g, comp), _environment())


def suite_indep_twisted(args):
    g = build_group(_group_from_args(args))
    t = maximal_torus(g, (2,))
    return SuiteReport("indep-twisted", {"group": g.name, "torus": [2]},
                       verify_indep_twisted(g, t), _environment())


def suite_orthogonality(args):
    g = build_group(_group_from_args(args))
    tori = [maximal_torus(g, (1, 1)), maximal_torus(g, (2,))]
    return SuiteReport("orthogonality", {"group": g.name},
                       verify_orthogonality(g, tori), _environment())


def suite_springer_chars(args):
    g = build_group(_group_from_args(args))
    cases = []
    for lam in [(1, 1), (2,)]:
        cases.extend(verify_springer_chars(g, maximal_torus(g, lam)))
    return SuiteReport("springer-chars", {"group": g.name},
                       cases, _environment())


def suite_howlett_lehrer(args):
    g = build_group(_group_from_args(args))
    comp = _parse_composition(args.composition, args.n) if args.composition \
        else (1,) * args.n
    p1 = standard_parabolic(g, comp)
    p2 = opposite_parabolic(p1)
    mat = intertwiner_matrix(p1, p2)
    det = matrix_determinant(mat)
    case = SuiteCase(f"det-intertwiner-{p1.name}", "pass" if det != 0 else "fail",
                     {"determinant": [det.numerator, det.denominator],
                      "size": len(mat)})
    return SuiteReport("howlett-lehrer",
                       {"group": g.name, "composition": list(comp)},
                       [case], _environment())


def suite_rel_bruhat(args):
    typ, rank = args.cartan_type[0].upper(), int(args.cartan_type[1:])
    rs = root_system(typ, rank)
    cases = []
    for lm in all_levi_masks(rs):
        levi = LeviSet(rs, lm)
        rep = verify_rel_bruhat(rs, levi)
        ok = not rep["counterexamples_a"] and not rep["counterexamples_b"]
        cases.append(SuiteCase(
            f"levi-{lm:x}", "pass" if ok else "fail",
            {"parabolics": rep["num_parabolics"],
             "checked_a": rep["checked_a"], "checked_b": rep["checked_b"],
             "counterexamples": len(rep["counterexamples_a"])
             + len(rep["counterexamples_b"])}))
        # reduction chains: all triples with the first component
        # canonicalized under the diagonal Weyl symmetry
        ps = parabolics_with_levi(rs, levi)
        reps = parabolic_orbit_reps(rs, levi)
        chains = 0
        max_moves = 0
        for p1 in reps:
            for p2 in ps:
                for p3 in ps:
                    moves, dists = reduction_chain(p1, p2, p3)
                    chains += 1
                    max_moves = max(max_moves, len(moves))
        cases.append(SuiteCase(f"chains-levi-{lm:x}", "pass",
                               {"chains": chains, "max_moves": max_moves}))
    return SuiteReport("rel-bruhat", {"type": f"{typ}{rank}"},
                       cases, _environment())


def suite_springer_convolution(args):
    g = build_group(_group_from_args(args))
    b = borel(g)
    c, failures = springer_convolution_check(g, b)
    case = SuiteCase("springer-convolution", "pass" if not failures else "fail",
                     {"constant": c.to_json(), "failures": failures,
                      "basis_size": g.num_classes})
    return SuiteReport("springer-convolution", {"group": g.name},
                       [case], _environment())


def suite_double_trace(args):
    g = build_group(_group_from_args(args))
    n = args.n
    comps = []
    for k in range(1, n):
        comps.append((k, n - k))
    comps.append((1,) * n)
    cases = []
    for comp in comps:
        p = standard_parabolic(g, comp)
        tab_m = character_table(p.levi)
        pt = parabolic_subgroup_table(p)
        for i, rho in enumerate(tab_m.irreducibles):
            lhs = induce(g, pt, inflate(p, rho))
            rhs = hc_induce(p, rho)
            cases.append(SuiteCase(
                f"P{comp}-rho{i}", "pass" if lhs == rhs else "fail",
                {"degree": tab_m.degrees[i]}))
    return SuiteReport("double-trace", {"group": g.name}, cases, _environment())


SUITES = {
    "indep-rational": suite_indep_rational,
    "indep-twisted": suite_indep_twisted,
    "orthogonality": suite_orthogonality,
    "springer-chars": suite_springer_chars,
    "howlett-lehrer": suite_howlett_lehrer,
    "rel-bruhat": suite_rel_bruhat,
    "springer-convolution": suite_springer_convolution,
    "double-trace": suite_double_trace,
}


# ---------------------------------------------------------------------------
# plain commands

def cmd_group(args):
    g = build_group(_group_from_args(args))
    return groups_json(g)


def cmd_table(args):
    g = build_group(_group_from_args(args))
    t = character_table(g)
    return {
        "schema": SCHEMA,
        "group": g.name,
        "prime": t.prime,
        "seed": t.seed,
        "classes": [{"representative": [list(r) for r in c.representative],
                     "size": c.size, "order": c.order}
                    for c in g.classes],
        "irreducibles": [{"degree": d, "values": chi.to_json()}
                         for d, chi in zip(t.degrees, t.irreducibles)],
    }


def cmd_hc_ind(args):
    g = build_group(_group_from_args(args))
    comp = _parse_composition(args.composition, args.n)
    p = standard_parabolic(g, comp, lower=args.lower)
    out = []
    for i, f in enumerate(delta_basis(p.levi)):
        out.append({"delta": i, "values": hc_induce(p, f).to_json()})
    return {"schema": SCHEMA, "group": g.name, "parabolic": p.name,
            "hc_induce_delta_basis": out}


def cmd_dl_char(args):
    g = build_group(_group_from_args(args))
    lam = (2,) if args.torus == "nonsplit" else (1, 1)
    t = maximal_torus(g, lam)
    out = []
    for theta in t.character_index:
        ch = dl_character_for(g, t, theta, choice=args.choice)
        out.append({"theta": list(theta.exponents), "values": ch.to_json()})
    return {"schema": SCHEMA, "group": g.name, "torus": list(lam),
            "choice": args.choice, "characters": out}


def cmd_intertwiner(args):
    g = build_group(_group_from_args(args))
    comp = _parse_composition(args.composition, args.n)
    p1 = standard_parabolic(g, comp)
    p2 = opposite_parabolic(p1)
    mat = intertwiner_matrix(p1, p2)
    det = matrix_determinant(mat)
    return {"schema": SCHEMA, "group": g.name, "parabolics": [p1.name, p2.name],
            "matrix": [[[x.numerator, x.denominator] for x in row]
                       for row in mat],
            "determinant": [det.numerator, det.denominator]}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dlchar",
        description="exact Deligne-Lusztig / Harish-Chandra character "
                    "computations and verification suites")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_group_args(p):
        p.add_argument("--family", choices=("GL", "SL"), required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--out", default=None)
        p.add_argument("--timing", action="store_true")

    for name in ("group", "table"):
        p = sub.add_parser(name)
        add_group_args(p)

    p = sub.add_parser("hc-ind")
    add_group_args(p)
    p.add_argument("--composition", required=True)
    p.add_argument("--lower", action="store_true")

    p = sub.add_parser("dl-char")
    add_group_args(p)
    p.add_argument("--torus", choices=("split", "nonsplit"), default="nonsplit")
    p.add_argument("--choice", choices=("plus", "minus"), default="plus")

    p = sub.add_parser("intertwiner")
    add_group_args(p)
    p.add_argument("--composition", required=True)

    p = sub.add_parser("verify")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--family", choices=("GL", "SL"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--q", type=int)
    p.add_argument("--composition", default=None)
    p.add_argument("--type", dest="cartan_type", default=None,
                   help="Cartan type for rel-bruhat, e.g. A3")
    p.add_argument("--out", default=None)
    p.add_argument("--timing", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.time()
    try:
        if args.command == "verify":
            if args.suite == "rel-bruhat":
                if not args.cartan_type:
                    raise ValueError("rel-bruhat needs --type")
            elif not (args.family and args.q):
                raise ValueError(f"suite {args.suite} needs --family/--q")
            report = SUITES[args.suite](args)
            if args.timing:
                report.environment["wall_time_ms"] = int(
                    (time.time() - t0) * 1000)
            _emit(report.to_json(), args.out)
            for c in report.cases:
                print(f"[{c.status:>7}] {report.suite}: {c.case_id}",
                      file=sys.stderr)
            return 0 if report.ok else 1
        handler = {"group": cmd_group, "table": cmd_table,
                   "hc-ind": cmd_hc_ind, "dl-char": cmd_dl_char,
                   "intertwiner": cmd_intertwiner}[args.command]
        _emit(handler(args), args.out)
        return 0
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
