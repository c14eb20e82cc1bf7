"""Acceptance suite: every criterion is exact (tolerance 0); each test
prints one pass/fail line."""

import time

import pytest

from dlchar.chartab import character_table
from dlchar.classfun import (intertwiner_matrix, matrix_determinant,
                             springer_convolution_check, hc_induce, induce,
                             inflate, parabolic_subgroup_table)
from dlchar.cyclo import Cyclotomic
from dlchar.dl import (TwistedBorelModel, _recurrence_extrapolate, dl_norm,
                       dl_character_for, verify_indep_rational,
                       verify_indep_twisted, verify_orthogonality,
                       verify_springer_chars)
from dlchar.groups import (SUPPORTED, GroupSpec, borel, build_group,
                           character_conjugate, maximal_torus,
                           opposite_parabolic, standard_parabolic,
                           torus_normalizer, twisted_parabolic_datum)
from dlchar.weyl import (LeviSet, all_levi_masks, parabolic_orbit_reps,
                         parabolics_with_levi, reduction_chain, root_system,
                         verify_rel_bruhat)


def G(fam, n, q):
    return build_group(GroupSpec(fam, n, q))


def _report(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, name


def test_criterion_1_indep_rational():
    t0 = time.time()
    ok = True
    for q in (2, 3):
        g = G("GL", 3, q)
        cases = verify_indep_rational(g, (1, 2))
        ok &= bool(cases) and all(c.status == "pass" for c in cases)
    _report("1 indep-rational GL_3(F_2), GL_3(F_3), Levi GL_1 x GL_2", ok,
            f"{time.time()-t0:.0f}s")


def test_criterion_2_indep_twisted():
    t0 = time.time()
    ok = True
    for q in (2, 3, 5):
        g = G("SL", 2, q)
        cases = verify_indep_twisted(g, maximal_torus(g, (2,)))
        ok &= bool(cases) and all(c.status == "pass" for c in cases)
    _report("2 indep-twisted SL_2(F_q), q in {2,3,5}, both Borel choices", ok,
            f"{time.time()-t0:.0f}s")


def test_criterion_3_orthogonality():
    t0 = time.time()
    ok = True
    checked = 0
    for fam in ("SL", "GL"):
        g = G(fam, 2, 3)
        tori = [maximal_torus(g, (1, 1)), maximal_torus(g, (2,))]
        cases = verify_orthogonality(g, tori)
        checked += sum(1 for c in cases if c.status == "pass")
        ok &= all(c.status != "fail" for c in cases)
    _report("3 orthogonality SL_2(F_3), GL_2(F_3): nonconjugate pairs pair to 0",
            ok, f"{checked} zero cases, {time.time()-t0:.0f}s")


def test_criterion_4_springer_chars():
    t0 = time.time()
    ok = True
    cnt = 0
    for q in (3, 4, 5):
        g = G("GL", 2, q)
        for lam in [(1, 1), (2,)]:
            cases = verify_springer_chars(g, maximal_torus(g, lam))
            cnt += len(cases)
            ok &= bool(cases) and all(c.status == "pass" for c in cases)
    _report("4 springer-chars GL_2(F_q), q in {3,4,5}, all tori/thetas/rss",
            ok, f"{cnt} cases, {time.time()-t0:.0f}s")


def test_criterion_5_howlett_lehrer():
    t0 = time.time()
    targets = ([("SL", 2, q, (1, 1)) for q in (2, 3, 4, 5)]
               + [("GL", 2, q, (1, 1)) for q in (2, 3, 4)]
               + [("GL", 3, 2, (1, 2))])
    ok = True
    for fam, n, q, comp in targets:
        g = G(fam, n, q)
        p = standard_parabolic(g, comp)
        det = matrix_determinant(intertwiner_matrix(p, opposite_parabolic(p)))
        ok &= det != 0
    _report("5 howlett-lehrer intertwiner determinants nonzero", ok,
            f"{len(targets)} targets, {time.time()-t0:.0f}s")


def test_criterion_6_rel_bruhat():
    t0 = time.time()
    ok = True
    types = [("A", 1), ("A", 2), ("A", 3), ("A", 4),
             ("B", 2), ("B", 3), ("C", 3), ("D", 4)]
    total_chains = 0
    for typ, rank in types:
        rs = root_system(typ, rank)
        for lm in all_levi_masks(rs):
            levi = LeviSet(rs, lm)
            rep = verify_rel_bruhat(rs, levi)
            ok &= not rep["counterexamples_a"] and not rep["counterexamples_b"]
            ps = parabolics_with_levi(rs, levi)
            reps = parabolic_orbit_reps(rs, levi)
            for p1 in reps:
                for p2 in ps:
                    for p3 in ps:
                        moves, dists = reduction_chain(p1, p2, p3)
                        assert all(y < x for x, y in zip(dists, dists[1:]))
                        total_chains += 1
    _report("6 rel-bruhat A1-A4, B2, B3, C3, D4, all Levis + chains", ok,
            f"{total_chains} chains, {time.time()-t0:.0f}s")


def test_criterion_7_springer_convolution():
    t0 = time.time()
    ok = True
    for fam, q in [("SL", 3), ("SL", 5), ("GL", 3)]:
        g = G(fam, 2, q)
        c, failures = springer_convolution_check(g, borel(g))
        ok &= failures == []
    _report("7 springer-convolution SL_2(F_3), SL_2(F_5), GL_2(F_3)", ok,
            f"{time.time()-t0:.0f}s")


def test_criterion_8_double_trace():
    t0 = time.time()
    ok = True
    cnt = 0
    jobs = [("GL", 3, 2, [(1, 2), (2, 1), (1, 1, 1)]),
            ("GL", 2, 3, [(1, 1)])]
    for fam, n, q, comps in jobs:
        g = G(fam, n, q)
        for comp in comps:
            p = standard_parabolic(g, comp)
            tab = character_table(p.levi)
            pt = parabolic_subgroup_table(p)
            for rho in tab.irreducibles:
                lhs = induce(g, pt, inflate(p, rho))
                rhs = hc_induce(p, rho)
                ok &= lhs == rhs
                cnt += 1
    _report("8 double-trace: ch(Ind infl rho) = hc_induce(ch rho)", ok,
            f"{cnt} irreducibles, {time.time()-t0:.0f}s")


def test_criterion_9a_character_table_invariants():
    t0 = time.time()
    # construction asserts row/column orthogonality and degree identities
    for fam, n, q in SUPPORTED:
        g = G(fam, n, q)
        t = character_table(g)
        assert sum(d * d for d in t.degrees) == g.order
    _report("9a character-table invariants for all supported groups", True,
            f"{len(SUPPORTED)} groups, {time.time()-t0:.0f}s")


def test_criterion_9b_dl_integrality():
    t0 = time.time()
    ok = True
    for fam, q in [("SL", 3), ("GL", 3)]:
        g = G(fam, 2, q)
        tab = character_table(g)
        for lam in [(1, 1), (2,)]:
            t = maximal_torus(g, lam)
            for theta in t.character_index:
                ch = dl_character_for(g, t, theta)
                for _, mult in tab.decompose(ch):
                    r = mult.as_rational()
                    ok &= r.denominator == 1
    _report("9b dl_character integrality under decompose", ok,
            f"{time.time()-t0:.0f}s")


def test_criterion_9c_dl_norms():
    t0 = time.time()
    ok = True
    for fam in ("SL", "GL"):
        g = G(fam, 2, 3)
        for lam in [(1, 1), (2,)]:
            t = maximal_torus(g, lam)
            reps = torus_normalizer(g, t)
            for theta in t.character_index:
                stab = sum(
                    1 for w in reps
                    if character_conjugate(t, theta, w).exponents
                    == theta.exponents)
                ok &= dl_norm(g, t, theta) == Cyclotomic.from_rational(stab)
    _report("9c dl_norm equals the theta-stabilizer order", ok,
            f"{time.time()-t0:.0f}s")


def test_criterion_9d_two_oracle_agreement():
    # fixed-point-count shortcut vs the isotypic recurrence fit, compared
    # through Fourier inversion over T(F_q), on every class all of whose
    # pairs act semisimply
    from fractions import Fraction
    t0 = time.time()
    ok = True
    cnt = 0
    for fam, q in [("SL", 2), ("SL", 3), ("GL", 3)]:
        g = G(fam, 2, q)
        t = maximal_torus(g, (2,))
        m = TwistedBorelModel(twisted_parabolic_datum(g, t, "plus"))
        for ci, c in enumerate(g.classes):
            sigmas = {tt: m._sigma_matrix(c.representative, tt)
                      for tt in t.points}
            if any(m._is_unipotent_action(s) for s in sigmas.values()):
                continue
            values = m._isotypic_values(ci)
            for tt in t.points:
                shortcut = m._semisimple_count(sigmas[tt])
                inverted = Cyclotomic.zero()
                for theta in t.character_index:
                    inverted = inverted + values[theta.exponents] * \
                        theta.inverse().value(tt)
                inverted = inverted * Fraction(1, t.order)
                ok &= inverted == shortcut.value
                cnt += 1
    _report("9d two-oracle Lefschetz agreement on semisimple cases", ok,
            f"{cnt} pairs, {time.time()-t0:.0f}s")
