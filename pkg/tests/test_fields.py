import pytest
from hypothesis import given, settings, strategies as st

from dlchar.fields import (
    BudgetExceeded, FieldTower, ScratchField, is_irreducible, make_tower,
    smallest_irreducible,
)


def test_make_tower_f4_modulus():
    # unique irreducible quadratic over F_2
    t = make_tower(2, 1, 2)
    assert t.level(2).modulus == (1, 1, 1)
    assert t.level(2).size == 4


def test_make_tower_f3():
    t = make_tower(3, 1, 1)
    assert list(t.level(1).elements()) == [0, 1, 2]


def test_make_tower_f4_base_levels():
    t = make_tower(2, 2, 3)
    assert t.level(1).size == 4
    assert t.level(2).size == 16
    assert t.level(3).size == 64


def test_not_prime_rejected():
    with pytest.raises(ValueError):
        FieldTower(4, 1, 1)


def test_budget_rejected():
    with pytest.raises(BudgetExceeded):
        FieldTower(2, 1, 30)


def test_frobenius_on_f4():
    t = make_tower(2, 1, 2)
    # x in F_4 \ F_2 has x^2 = x + 1 (other root of x^2+x+1)
    s = t.level(2)
    x = t.element(2, s.encode([0, 1]))
    fx = t.frobenius(x)
    assert fx.code == s.encode([1, 1])
    assert t.frobenius(fx) == x


def test_frobenius_fixes_base():
    t = make_tower(3, 1, 2)
    for c in range(3):
        x = t.element(2, t.embed_code(1, 2, c))
        assert t.frobenius(x) == x


def test_frobenius_generator_f9():
    # g generator of F_9 over base F_3: frobenius is g -> g^3, order of g^3 is 8
    t = make_tower(3, 1, 2)
    s = t.level(2)
    g = t.element(2, s.generator)
    fg = t.frobenius(g)
    assert fg == g ** 3
    assert s.order(fg.code) == 8


def test_embed_zero_one():
    t = make_tower(2, 1, 4)
    assert t.embed_code(1, 4, 0) == 0
    assert t.embed_code(1, 4, 1) == 1


def test_embed_preserves_order():
    t = make_tower(2, 1, 4)
    s2 = t.level(2)
    g = s2.generator
    assert s2.order(g) == 3
    assert t.level(4).order(t.embed_code(2, 4, g)) == 3


def test_embed_compatibility_chain():
    t = make_tower(2, 1, 4)
    for c in t.level(1).elements():
        via = t.embed_code(2, 4, t.embed_code(1, 2, c))
        assert via == t.embed_code(1, 4, c)


def test_embed_is_field_hom():
    t = make_tower(3, 1, 4)
    s2, s4 = t.level(2), t.level(4)
    for a in range(s2.size):
        for b in range(s2.size):
            assert t.embed_code(2, 4, s2.add(a, b)) == \
                s4.add(t.embed_code(2, 4, a), t.embed_code(2, 4, b))
            assert t.embed_code(2, 4, s2.mul(a, b)) == \
                s4.mul(t.embed_code(2, 4, a), t.embed_code(2, 4, b))


def test_embed_commutes_with_frobenius():
    t = make_tower(2, 2, 3)
    for c in t.level(1).elements():
        lhs = t.frobenius_code(3, t.embed_code(1, 3, c))
        rhs = t.embed_code(1, 3, t.frobenius_code(1, c))
        assert lhs == rhs


def test_embed_rejects_non_divisor():
    t = make_tower(2, 1, 3)
    with pytest.raises(ValueError):
        t.embed_table(2, 3)


@pytest.mark.parametrize("p,k,m,n", [(2, 1, 3, 2), (3, 1, 2, 2), (5, 1, 2, 1)])
def test_frobenius_fixed_counts(p, k, m, n):
    # frobenius^n fixes exactly q^gcd(n, m) elements inside level m
    from math import gcd
    t = make_tower(p, k, m)
    q = p ** k
    s = t.level(m)
    fixed = sum(1 for c in s.elements() if s.pow(c, q ** n) == c)
    assert fixed == q ** gcd(n, m)


@pytest.mark.parametrize("p,k,n", [(2, 1, 4), (3, 1, 2), (5, 1, 2), (2, 2, 2)])
def test_field_axioms_exhaustive_inverse(p, k, n):
    t = make_tower(p, k, n)
    s = t.level(n)
    for a in s.elements():
        if a:
            assert s.mul(a, s.inv(a)) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3**4 - 1), st.integers(0, 3**4 - 1), st.integers(0, 3**4 - 1))
def test_field_axioms_random(a, b, c):
    s = make_tower(3, 1, 4).level(4)
    assert s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c))
    assert s.mul(a, b) == s.mul(b, a)
    assert s.add(a, s.neg(a)) == 0


def test_smallest_irreducible_samples():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert is_irreducible(list(smallest_irreducible(5, 4)), 5)
    assert is_irreducible(list(smallest_irreducible(2, 8)), 2)


def test_scratch_field_embeddings():
    t = make_tower(5, 1, 4)
    sf = ScratchField(t, 8, embed_levels=(1, 2, 4))
    s8 = sf.spec
    # homomorphism + coherence on a sample of level-2 elements
    s2 = t.level(2)
    for a in range(7):
        for b in range(5):
            assert sf.embed_code(2, s2.mul(a, b)) == \
                s8.mul(sf.embed_code(2, a), sf.embed_code(2, b))
            assert sf.embed_code(2, s2.add(a, b)) == \
                s8.add(sf.embed_code(2, a), sf.embed_code(2, b))
    # level 2 -> 4 -> scratch agrees with 2 -> scratch
    for a in range(s2.size):
        assert sf.embed_code(4, t.embed_code(2, 4, a)) == sf.embed_code(2, a)
