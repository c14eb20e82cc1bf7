import pytest

from dlchar.groups import (
    GroupSpec, build_group, borel, maximal_torus, opposite_parabolic,
    standard_parabolic, torus_normalizer, twisted_parabolic_datum,
    weyl_orbit_characters, character_conjugate,
)


def G(family, n, q):
    return build_group(GroupSpec(family, n, q))


def test_sl2_f3_order():
    g = G("SL", 2, 3)
    assert g.order == 24
    assert g.num_classes == 7


def test_gl2_f3_classes():
    g = G("GL", 2, 3)
    assert g.order == 48
    assert g.num_classes == 8  # q^2 - 1


def test_gl3_f2_order():
    g = G("GL", 3, 2)
    assert g.order == 168


def test_class_size_times_centralizer():
    g = G("GL", 2, 3)
    for c in g.classes:
        assert c.size * c.centralizer_order == g.order
    assert sum(c.size for c in g.classes) == g.order


def test_centralizer_brute_force_matches():
    for fam, n, q in [("SL", 2, 3), ("GL", 2, 3), ("GL", 3, 2)]:
        g = G(fam, n, q)
        for c in g.classes:
            assert g.centralizer_order_brute(c.representative) == c.centralizer_order


def test_closure_spot_check():
    g = G("SL", 2, 2)
    for a in g.elements:
        for b in g.elements:
            assert g.ops.mul(a, b) in g.index
        assert g.ops.inv(a) in g.index


def test_rss_flag_matches_torus_centralizers():
    g = G("GL", 2, 3)
    torus_orders = {maximal_torus(g, lam).order for lam in [(1, 1), (2,)]}
    for c in g.classes:
        if c.is_rss:
            assert c.centralizer_order in torus_orders


def test_borel_gl2_f3():
    g = G("GL", 2, 3)
    p = borel(g)
    assert len(p.P_points) == 12
    assert len(p.N_points) == 3
    assert p.levi.order == 4


def test_parabolic_sl2_f2():
    g = G("SL", 2, 2)
    p = borel(g)
    assert len(p.N_points) == 2
    assert p.levi.order == 1


def test_parabolic_index_gl3_f2():
    g = G("GL", 3, 2)
    p = standard_parabolic(g, (1, 2))
    assert g.order // len(p.P_points) == 7


def test_opposite_parabolic():
    g = G("GL", 2, 3)
    p = borel(g)
    pm = opposite_parabolic(p)
    assert pm.lower and not p.lower
    assert len(pm.P_points) == len(p.P_points)
    assert set(pm.P_points) & set(p.P_points) == set(p.levi.elements)


def test_split_torus_gl2():
    g = G("GL", 2, 3)
    t = maximal_torus(g, (1, 1))
    assert t.order == 4


def test_nonsplit_torus_gl2():
    g = G("GL", 2, 3)
    t = maximal_torus(g, (2,))
    assert t.order == 8
    assert len(t.abelian_structure) == 1  # cyclic


def test_nonsplit_torus_sl2():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (2,))
    assert t.order == 4
    assert len(t.abelian_structure) == 1


def test_torus_characters_multiplicative_and_distinct():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (2,))
    chars = t.character_index
    assert len(chars) == t.order
    seen = set()
    for th in chars:
        vals = tuple(th.exponent_at(x) for x in t.points)
        assert vals not in seen
        seen.add(vals)
        for a in t.points:
            for b in t.points:
                ab = g.ops.mul(a, b)
                assert th.value(ab) == th.value(a) * th.value(b)


def test_weyl_orbits_split_gl2():
    g = G("GL", 2, 3)
    t = maximal_torus(g, (1, 1))
    orbits, reps = weyl_orbit_characters(t)
    assert len(reps) == 2  # relative Weyl group of order 2
    trivial = [i for i, c in enumerate(t.character_index) if c.is_trivial()][0]
    assert (trivial,) in orbits


def test_weyl_orbits_nonsplit_sl2_f3():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (2,))  # cyclic of order 4, W acts by inversion
    orbits, reps = weyl_orbit_characters(t)
    sizes = sorted(len(o) for o in orbits)
    assert sizes == [1, 1, 2]
    assert sum(len(o) for o in orbits) == t.order


def test_character_conjugation_is_action():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (2,))
    reps = torus_normalizer(g, t)
    for th in t.character_index:
        for w in reps:
            moved = character_conjugate(t, th, w)
            for x in t.points:
                assert moved.value(x) == th.value(g.ops.conjugate(g.ops.inv(w), x))


def test_twisted_datum_split():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (1, 1))
    d = twisted_parabolic_datum(g, t, "plus")
    assert d.weyl_class == "id"


def test_twisted_datum_nonsplit():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (2,))
    dp = twisted_parabolic_datum(g, t, "plus")
    dm = twisted_parabolic_datum(g, t, "minus")
    assert dp.weyl_class == "s"
    assert dm.weyl_class == "s"
    assert dp.h != dm.h


def test_twisted_datum_conjugates_torus():
    g = G("SL", 2, 3)
    t = maximal_torus(g, (2,))
    d = twisted_parabolic_datum(g, t, "plus")
    tower = g.tower
    from dlchar.matrices import MatrixOps
    spec = tower.level(d.level)
    mops = MatrixOps(spec, 2)
    hinv = mops.inv(d.h)
    assert d.wdot == ((0, spec.neg(1)), (1, 0))
    for x in t.points:
        lifted = tuple(tuple(tower.embed_code(1, d.level, c) for c in row)
                       for row in x)
        dm = mops.mul(mops.mul(hinv, lifted), d.h)
        assert dm[0][1] == 0 and dm[1][0] == 0, "h does not diagonalize the torus"


def test_lang_map_fibers():
    # t -> w(t) Frob(t^{-1}) on the wF-twisted rational points T_w(F_{q^m})
    # is |T_w(F_q)|-to-one onto its image.  In diagonal coordinates of SL_2
    # the nonsplit torus is a -> diag(a, a^{-1}) with w acting by inversion,
    # so the map is a -> a^{-(q+1)} on {a : a^{q^m - (-1)^m} = 1}.
    from collections import Counter
    for q, p in [(2, 2), (3, 3)]:
        g = G("SL", 2, q)
        t = maximal_torus(g, (2,))
        tower = g.tower
        for m in (1, 2, 3):
            lvl = 2 * m
            spec = tower.level(lvl)
            cond = q ** m - (-1) ** m
            domain = [a for a in range(1, spec.size)
                      if spec.pow(a, cond) == 1]
            assert len(domain) == cond  # |T_w(F_{q^m})| for the twisted form
            images = Counter(spec.pow(a, -(q + 1)) for a in domain)
            assert set(images.values()) == {t.order}
