"""Number field arithmetic, square class bookkeeping, the quartic group test."""

import random
from fractions import Fraction

import pytest

from modgal.intpoly import IntPoly, real_root_count, squarefree_part
from modgal.numfield import (NumberField, charpoly_content, content_removed,
                             galois_group_is_A4, is_integral, nf_charpoly,
                             nf_norm, nf_trace, parse_gexpr, rel_norm,
                             residue_image, resolvent_cubic, totally_positive)

F277 = IntPoly([1, 3, -16, -1, 1])
S277 = [347661, 2034265, 193305, -150700]


def test_field_construction():
    F = NumberField(F277)
    assert F.n == 4
    assert F.is_totally_real()
    assert not NumberField(IntPoly([1, 0, 1])).is_totally_real()
    with pytest.raises(ValueError):
        NumberField(IntPoly([-1, 0, 1]))  # x^2 - 1 splits
    with pytest.raises(ValueError):
        NumberField(IntPoly([1, 2, 3, 2, 1]))  # (x^2+x+1)^2


def test_elem_arithmetic():
    K = NumberField(IntPoly([-2, 0, 1]))
    a = K.gen()
    assert (K.one() + a) * (K.one() - a) == K.elem(-1)
    assert a * a == K.elem(2)
    assert (K.one() / a) * a == K.one()
    assert nf_norm(K.one() + a) == -1
    assert nf_trace(K.one() + a) == 2
    assert nf_charpoly(a) == IntPoly([-2, 0, 1])


def test_charpoly_properties():
    F = NumberField(F277)
    rng = random.Random(13)
    for _ in range(12):
        x = F.elem([rng.randrange(-5, 6) for _ in range(4)])
        y = F.elem([rng.randrange(-5, 6) for _ in range(4)])
        # Cayley-Hamilton: the charpoly kills its own element
        cp = nf_charpoly(x)
        acc = F.zero()
        for c in reversed(cp.coeffs):
            acc = acc * x + F.elem(c)
        assert acc.is_zero()
        assert Fraction(nf_norm(x * y)) == Fraction(nf_norm(x)) * Fraction(nf_norm(y))
        assert nf_trace(x + y) == nf_trace(x) + nf_trace(y)


def test_integrality_and_content():
    K5 = NumberField(IntPoly([-5, 0, 1]))
    a = K5.gen()
    phi = (K5.one() + a) * Fraction(1, 2)
    assert is_integral(phi)
    assert not is_integral(a * Fraction(1, 2))
    s, n = content_removed(K5.elem([3, 3]))
    # the gcd is 3, then one halving survives: (1 + a)/2 is the golden unit
    assert [str(c) for c in s.coords] == ["1/2", "1/2"] and n == 6
    assert charpoly_content(phi) == 1
    assert charpoly_content(a * Fraction(1, 2)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        content_removed(K5.zero())
    with pytest.raises(ValueError):
        content_removed(phi)


def test_totally_positive():
    K = NumberField(IntPoly([-2, 0, 1]))
    a = K.gen()
    assert totally_positive(K.elem(3) + a)
    assert not totally_positive(K.one() + a)  # 1 - sqrt2 < 0
    assert not totally_positive(a)
    assert totally_positive(K.elem(2))
    assert not totally_positive(K.zero())
    with pytest.raises(ValueError):
        totally_positive(NumberField(IntPoly([1, 0, 1])).gen())


def test_totally_positive_sturm_oracle():
    # sign alternation must agree with a Sturm count of roots in (0, inf)
    F = NumberField(F277)
    rng = random.Random(29)
    for _ in range(30):
        x = F.elem([rng.randrange(-6, 7) for _ in range(4)])
        if x.is_zero():
            continue
        mp = squarefree_part(nf_charpoly(x))
        want = (mp.coeffs[0] != 0
                and real_root_count(mp, 0, None) == mp.degree)
        assert totally_positive(x) == want


def test_residue_image():
    F = NumberField(F277)
    a = F.gen()
    assert residue_image(a, 5, IntPoly([2, 1])).rep == (3,)
    s = F.elem(S277)
    assert residue_image(s, 5, IntPoly([2, 1])).rep == (1,)
    assert residue_image(s, 5, IntPoly([3, 0, 2, 1])).rep == (1, 0, 0)
    with pytest.raises(ValueError):
        residue_image(a, 5, IntPoly([1, 1]))  # x+1 does not divide f mod 5
    with pytest.raises(ValueError):
        residue_image(a * Fraction(1, 2), 2, IntPoly([1, 1]))


def test_galois_group_is_a4():
    assert galois_group_is_A4(F277)
    assert galois_group_is_A4(IntPoly([9, 2, -7, -1, 1]))
    assert galois_group_is_A4(IntPoly([15, -11, -13, 0, 1]))
    assert galois_group_is_A4(IntPoly([26, -21, -13, 2, 1]))
    assert not galois_group_is_A4(IntPoly([-2, 0, 0, 0, 1]))  # S4
    assert not galois_group_is_A4(IntPoly([1, 0, 0, 0, 1]))  # V4, square disc
    with pytest.raises(ValueError):
        galois_group_is_A4(IntPoly([-1, 0, 0, 0, 1]))  # reducible
    with pytest.raises(ValueError):
        galois_group_is_A4(IntPoly([-1, 0, 1]))
    with pytest.raises(ValueError):
        galois_group_is_A4(IntPoly([0, 0, 0, 0, 2]))


def test_resolvent_cubic():
    # x^4 + 1 resolves to x^3 - 4x, rational roots force the answer above
    assert resolvent_cubic(IntPoly([1, 0, 0, 0, 1])) == IntPoly([0, -4, 0, 1])
    with pytest.raises(ValueError):
        resolvent_cubic(IntPoly([1, 1, 1]))


def test_parse_gexpr():
    assert parse_gexpr("1 + 2a + a^2") == {(0, 0): 1, (1, 0): 2, (2, 0): 1}
    assert parse_gexpr("3ab^2") == {(1, 2): 3}
    assert parse_gexpr("-b + 4a^3b^2") == {(0, 1): -1, (3, 2): 4}
    assert parse_gexpr("a - a") == {}  # cancellation collapses to nothing
    with pytest.raises(ValueError):
        parse_gexpr("2c + 1")
    with pytest.raises(ValueError):
        parse_gexpr("")


def test_rel_norm():
    F = NumberField(F277)
    a = F.gen()
    # g independent of b: the relative norm is the cube
    rn = rel_norm(parse_gexpr("1 + 2a + a^2"), F)
    assert rn == (F.one() + a) ** 6
    # g = b: norm of b is the product of the other three roots, f(0)/a
    assert rel_norm(parse_gexpr("b"), F) == F.one() / a
    assert list((F.one() / a).coords) == [-3, 16, 1, -1]
