"""Exact base layer: integer polynomials, finite fields, small linear algebra."""

import random
from fractions import Fraction

import pytest

from modgal.intpoly import (IntPoly, bareiss_det, poly_discriminant,
                            poly_divmod, poly_from_text, poly_gcd,
                            poly_to_text, poly_x, real_root_count, resultant,
                            squarefree_part)
from modgal.finitefield import (factor_poly_mod_l, factorize, ff_factor,
                                ff_is_square, ff_root_of_unity, ff_roots,
                                ffp_from_coeffs, ffp_mul, finite_field,
                                hensel_lift_factors, is_prime, legendre)
from modgal.linalg import (charpoly, hnf_rows, identity_matrix, kernel_basis,
                           mat_mul, mat_rank, mat_vec, rref, solve_right)

F277 = IntPoly([1, 3, -16, -1, 1])


def test_intpoly_basics():
    f = IntPoly([1, 2, 3])
    assert f.degree == 2 and f.lc == 3
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([]).is_zero() and not IntPoly([5]).is_zero()
    x = poly_x()
    assert (x + 1) * (x - 1) == x ** 2 - 1
    assert (x + 2) ** 3 == IntPoly([8, 12, 6, 1])
    assert f(2) == 1 + 4 + 12
    assert f(Fraction(1, 2)) == Fraction(11, 4)
    assert f.derivative() == IntPoly([2, 6])
    assert IntPoly([7]).derivative().is_zero()


def test_content_primitive_monic():
    f = IntPoly([6, -9, 12])
    assert f.content() == 3
    assert f.primitive() == IntPoly([2, -3, 4])
    g = IntPoly([Fraction(1, 2), Fraction(3, 4)])
    assert g.content() == Fraction(1, 4)
    assert not g.is_integral()
    m = IntPoly([2, 0, 4]).monic()
    assert m == IntPoly([Fraction(1, 2), 0, 1])


def test_poly_divmod():
    x = poly_x()
    q, r = poly_divmod(x ** 3 - 1, x - 1)
    assert q == x ** 2 + x + 1 and r.is_zero()
    q, r = poly_divmod(x ** 2 + 1, IntPoly([1, 2]))
    assert r == IntPoly([Fraction(5, 4)])
    with pytest.raises(ZeroDivisionError):
        poly_divmod(x, IntPoly([]))
    rng = random.Random(11)
    for _ in range(25):
        f = IntPoly([rng.randrange(-9, 10) for _ in range(6)])
        g = IntPoly([rng.randrange(-9, 10) for _ in range(3)] + [1])
        q, r = poly_divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree


def test_poly_gcd():
    x = poly_x()
    assert poly_gcd(x ** 2 - 1, x ** 3 - 1) == x - 1
    assert poly_gcd(IntPoly([2, 2]), IntPoly([4])) == IntPoly([1])
    # primitive with positive leading coefficient regardless of input signs
    assert poly_gcd(-6 * (x - 1), 4 * (x - 1) * (x + 2)) == x - 1


def test_squarefree_part():
    x = poly_x()
    f = (x - 1) * (x - 1) * (x + 2)
    assert squarefree_part(f) == (x - 1) * (x + 2)
    assert squarefree_part(-f) == -((x - 1) * (x + 2))
    with pytest.raises(ValueError):
        squarefree_part(IntPoly([]))


def test_real_root_count():
    x = poly_x()
    assert real_root_count(x ** 2 - 2) == 2
    assert real_root_count(x ** 2 + 1) == 0
    assert real_root_count(x ** 3 - x) == 3
    assert real_root_count(F277) == 4
    # interval form is half open (lo, hi]
    assert real_root_count(x ** 2 - 2, 0, 2) == 1
    assert real_root_count(x ** 2 - 2, -2, 0) == 1
    assert real_root_count(x ** 2 - 4, 0, 2) == 1
    assert real_root_count(x ** 2 - 4, 2, 4) == 0
    with pytest.raises(ValueError):
        real_root_count((x - 1) * (x - 1))


def test_resultant_and_discriminant():
    x = poly_x()
    assert resultant(x ** 2 - 2, x ** 2 - 3) == 1
    # Res(f, g) = prod f(roots of g) up to leading normalization
    assert resultant(x - 3, x ** 2 + 1) == 10
    assert poly_discriminant(IntPoly([-1, -1, 0, 1])) == -23
    assert poly_discriminant(F277) == 2 ** 4 * 277 ** 2
    assert poly_discriminant(IntPoly([9, 2, -7, -1, 1])) == 163 ** 2
    assert bareiss_det([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == 624


def test_text_round_trip():
    assert poly_to_text(F277) == "1 3 -16 -1 1"
    assert poly_from_text("1 3 -16 -1 1") == F277
    assert poly_from_text(poly_to_text(IntPoly([-7, 0, 2]))) == IntPoly([-7, 0, 2])


def test_prime_utilities():
    assert is_prime(2) and is_prime(277) and is_prime(2777)
    assert not is_prime(1) and not is_prime(221)
    assert factorize(1227664) == [(2, 4), (277, 2)]
    assert factorize(1) == []
    assert legendre(4, 13) == 1 and legendre(2, 13) == -1 and legendre(13, 13) == 0


def test_finite_field_axioms():
    for p, k in ((13, 1), (3, 3), (5, 2)):
        fld = finite_field(p, k)
        rng = random.Random(100 * p + k)
        for _ in range(20):
            a = fld.elem_from_index(rng.randrange(p ** k))
            b = fld.elem_from_index(rng.randrange(p ** k))
            c = fld.elem_from_index(rng.randrange(p ** k))
            assert (a + b) * c == a * c + b * c
            assert a + (-a) == fld.zero()
            if not a.is_zero():
                assert a * a.inverse() == fld.one()
                assert a ** (p ** k - 1) == fld.one()
        assert len(list(fld.elements())) == p ** k


def test_field_generators():
    F13 = finite_field(13)
    assert F13.generator().rep == (2,)
    F27 = finite_field(3, 3)
    g = F27.generator()
    assert all(g ** k != F27.one() for k in range(1, 26))
    assert g ** 26 == F27.one()
    z = ff_root_of_unity(F13, 3)
    assert z.rep == (3,) and z ** 3 == F13.one() and z != F13.one()
    with pytest.raises(ValueError):
        ff_root_of_unity(F13, 5)
    assert ff_is_square(F13.elem(4))
    assert not ff_is_square(F13.elem(2))


def test_ff_roots_and_factor():
    F13 = finite_field(13)
    assert [r.rep for r in ff_roots(ffp_from_coeffs(F13, [-4, 0, 1]), F13)] \
        == [(2,), (11,)]
    # reconstruction: unit * prod(factor^mult) == input
    rng = random.Random(5)
    for p, k in ((5, 1), (13, 1), (3, 2)):
        fld = finite_field(p, k)
        for _ in range(10):
            cs = [fld.elem_from_index(rng.randrange(p ** k)) for _ in range(5)]
            while cs[-1].is_zero():
                cs[-1] = fld.elem_from_index(rng.randrange(p ** k))
            f = [c for c in cs]
            unit, facs = ff_factor(f, fld)
            prod = [unit]
            for g, m in facs:
                for _ in range(m):
                    prod = ffp_mul(prod, g)
            assert prod == f


def test_factor_poly_mod_l():
    assert [(q.coeffs, m) for q, m in factor_poly_mod_l(F277, 5)] \
        == [((2, 1), 1), ((3, 0, 2, 1), 1)]
    assert [(q.coeffs, m) for q, m in factor_poly_mod_l(F277, 2)] \
        == [((1, 1), 2), ((1, 1, 1), 1)]
    assert [(q.coeffs, m) for q, m in factor_poly_mod_l(F277, 277)] \
        == [((109, 1), 1), ((148, 1), 3)]
    with pytest.raises(ValueError):
        factor_poly_mod_l(F277, 6)
    with pytest.raises(ValueError):
        factor_poly_mod_l(IntPoly([]), 5)


def test_hensel_lift():
    lift = hensel_lift_factors(F277, 5, 3)
    assert [q.coeffs for q in lift] == [(12, 1), (73, 15, 112, 1)]
    prod = IntPoly([1])
    for q in lift:
        prod = prod * q
    assert [c % 125 for c in prod.coeffs] == [c % 125 for c in F277.coeffs]
    # reductions agree with the mod 5 factorization
    down = sorted(tuple(c % 5 for c in q.coeffs) for q in lift)
    assert down == [(2, 1), (3, 0, 2, 1)]
    with pytest.raises(ValueError):
        hensel_lift_factors(F277, 2, 4)  # double root mod 2
    with pytest.raises(ValueError):
        hensel_lift_factors(IntPoly([1, 5]), 5, 2)


def test_matrix_basics():
    F13 = finite_field(13)
    a = [[F13.elem(2), F13.elem(1)], [F13.elem(0), F13.elem(3)]]
    i2 = identity_matrix(F13, 2)
    assert mat_mul(a, i2) == a and mat_mul(i2, a) == a
    assert [x.rep for x in mat_vec(a, [F13.elem(1), F13.elem(1)])] \
        == [(3,), (3,)]
    assert [c.rep for c in charpoly(a, F13)] == [(6,), (8,), (1,)]
    assert charpoly([], F13) == [F13.one()]


def test_charpoly_companion_oracle():
    # charpoly of the companion matrix of a monic f recovers f
    rng = random.Random(17)
    for p, k in ((13, 1), (5, 1), (3, 2)):
        fld = finite_field(p, k)
        for _ in range(8):
            n = rng.randrange(2, 6)
            cs = [fld.elem_from_index(rng.randrange(p ** k)) for _ in range(n)]
            comp = [[fld.zero()] * n for _ in range(n)]
            for i in range(1, n):
                comp[i][i - 1] = fld.one()
            for i in range(n):
                comp[i][n - 1] = -cs[i]
            got = charpoly(comp, fld)
            assert got == cs + [fld.one()]


def test_kernel_and_solve():
    F13 = finite_field(13)
    rows = [[F13.elem(1), F13.elem(2), F13.elem(3)],
            [F13.elem(2), F13.elem(4), F13.elem(6)]]
    assert mat_rank(rows) == 1
    ker = kernel_basis(rows, F13)
    assert len(ker) == 2
    for v in ker:
        assert all(x.is_zero() for x in mat_vec(rows, v))
    red, piv = rref(rows)
    assert piv == [0] and len(red) == 1
    v = solve_right(rows, [F13.elem(3), F13.elem(6)], F13)
    assert [x.rep for x in mat_vec(rows, v)] == [(3,), (6,)]
    assert solve_right([[F13.elem(1)], [F13.elem(1)]],
                       [F13.elem(1), F13.elem(2)], F13) is None


def test_hnf_rows():
    rows = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    h = hnf_rows(rows)
    assert h == [[2, 0, 120], [0, 2, 20], [0, 0, 156]]
    assert 2 * 2 * 156 == abs(bareiss_det(rows))
    # adjoining the original rows changes nothing: same lattice
    assert hnf_rows(h + rows) == h
    assert hnf_rows([[0, 0], [0, 0]]) == []
    assert hnf_rows([[0, 3], [2, 0]]) == [[2, 0], [0, 3]]
