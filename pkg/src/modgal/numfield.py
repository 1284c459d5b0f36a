"""Arithmetic in F = Q[x]/(f) and in the relative cubic extension K = F[b].

Elements carry exact rational coordinates in the power basis 1, a, ..,
a^(n-1).  The relative extension is handled entirely through the companion
matrix of f(x)/(x - a), following the classical norm-as-determinant route.
"""

import re
from fractions import Fraction
from math import gcd

from .intpoly import (IntPoly, poly_divmod, real_root_count, squarefree_part,
                      poly_discriminant)
from .finitefield import finite_field, ff_roots, ffp_from_coeffs, is_prime


class NumberField:
    """Q[x]/(f) for a monic integral polynomial f, certified irreducible."""

    __slots__ = ("f", "n", "_red", "_totally_real")

    def __init__(self, f, assume_irreducible=False):
        if not all(isinstance(c, int) for c in f.coeffs):
            raise ValueError("defining polynomial must be integral")
        if f.lc != 1:
            raise ValueError("defining polynomial must be monic")
        n = f.degree
        if n < 1:
            raise ValueError("defining polynomial must be nonconstant")
        if not assume_irreducible and not _certify_irreducible(f):
            raise ValueError("defining polynomial is reducible")
        self.f = f
        self.n = n
        # reductions of a^n .. a^(2n-2) against f, as integer coordinate rows
        red = []
        prev = [-c for c in f.coeffs[:-1]]
        red.append(list(prev))
        for _ in range(n - 2):
            prev = [0] + prev
            top = prev.pop()
            prev = [c + top * r for c, r in zip(prev, red[0])]
            red.append(list(prev))
        self._red = red
        self._totally_real = None

    def elem(self, coords):
        if isinstance(coords, NFElem):
            if coords.field is self:
                return coords
            # distinct instances over the same defining polynomial are the
            # same field; rewrap instead of rejecting
            if coords.field.f == self.f:
                return NFElem(self, coords.coords)
            raise ValueError("element of a different field")
        if isinstance(coords, (int, Fraction)):
            coords = [coords]
        cs = [Fraction(c) for c in coords]
        if len(cs) > self.n:
            raise ValueError("too many coordinates")
        cs += [Fraction(0)] * (self.n - len(cs))
        return NFElem(self, tuple(cs))

    def gen(self):
        return self.elem([0, 1] if self.n > 1 else [0])

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def _mul_coords(self, u, v):
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    prod[i + j] += x * y
        out = prod[:n]
        for d in range(n, 2 * n - 1):
            c = prod[d]
            if c:
                for i, r in enumerate(self._red[d - n]):
                    out[i] += c * r
        return tuple(out)

    def is_totally_real(self):
        if self._totally_real is None:
            self._totally_real = real_root_count(self.f) == self.n
        return self._totally_real

    def __repr__(self):
        return "NumberField(%r)" % (self.f,)


def _certify_irreducible(f):
    """Irreducibility over Q for degree <= 4: rational roots, then an
    exhaustive search for integer quadratic factors.  Higher degrees must
    be asserted by the caller."""
    n = f.degree
    if n == 1:
        return True
    if _has_rational_root(f):
        return False
    if n <= 3:
        return True
    if n == 4:
        return not _has_quadratic_factor(f)
    raise ValueError("cannot certify degree %d; pass assume_irreducible" % n)


def _has_rational_root(f):
    c0 = f.coeffs[0]
    if c0 == 0:
        return True
    for d in _divisors(abs(c0)):
        for r in (d, -d):
            # monic, so candidate roots are integer divisors of the constant
            if f(r) == 0:
                return True
    return False


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _has_quadratic_factor(f):
    # f = (x^2 + u x + v)(x^2 + w x + z) forces v z = c0, so try divisor pairs
    c0, c1, c2, c3 = f.coeffs[0], f.coeffs[1], f.coeffs[2], f.coeffs[3]
    for v in _signed_divisors(c0):
        if v == 0 or c0 % v != 0:
            continue
        z = c0 // v
        # remaining constraints: u + w = c3, u z + w v = c1, v + z + u w = c2
        if z != v:
            num = c1 - v * c3
            if num % (z - v) != 0:
                continue
            u = num // (z - v)
            w = c3 - u
            if v + z + u * w == c2:
                return True
        else:
            # v = z makes the x coefficient v*c3 automatically
            if c1 != v * c3:
                continue
            disc = c3 * c3 - 4 * (c2 - 2 * v)
            if disc >= 0:
                r = _isqrt(disc)
                if r * r == disc and (c3 + r) % 2 == 0:
                    return True
    return False


def _signed_divisors(n):
    if n == 0:
        return [0]
    ds = _divisors(abs(n))
    return [d for a in ds for d in (a, -a)]


def _isqrt(n):
    from math import isqrt
    return isqrt(n)


class NFElem:
    """Element of a NumberField with exact rational power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field is not self.field:
                raise ValueError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field,
                      tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.field.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError
        # Bezout against f in Q[x]
        a = IntPoly(self.field.f.coeffs)
        b = IntPoly(self.coords)
        s0, s1 = IntPoly(), IntPoly([1])
        while not b.is_zero():
            q, r = poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
        inv = Fraction(1) / Fraction(a.coeffs[0])
        out = (s0 * inv).coeffs
        return self.field.elem(list(out))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.elem(other) / self

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, NFElem) else other
        if o is None:
            return NotImplemented
        return self.field is o.field and self.coords == o.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __repr__(self):
        return "NFElem(%s)" % (", ".join(str(c) for c in self.coords))


# ---------------------------------------------------------------------------
# Characteristic polynomial, norm, trace, integrality

def _mult_matrix(x):
    """Matrix of multiplication by x on the power basis, columns = images."""
    fld = x.field
    n = fld.n
    cols = []
    v = fld.one()
    for i in range(n):
        cols.append((x * v).coords)
        v = v * fld.gen()
    # return rows
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def nf_charpoly(x):
    """Monic characteristic polynomial of multiplication by x, degree n.

    Computed by the Faddeev-LeVerrier recursion over Q; fine here because
    the base ring has characteristic zero.
    """
    m = _mult_matrix(x)
    n = len(m)
    coeffs = [Fraction(1)] * (n + 1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        mk[i][i] = Fraction(1)
    cs = [Fraction(1)]
    for k in range(1, n + 1):
        mk = _fr_mat_mul(m, mk)
        tr = sum(mk[i][i] for i in range(n))
        c = -tr / k
        cs.append(c)
        for i in range(n):
            mk[i][i] += c
    # cs[k] is the coefficient of x^(n-k)
    out = list(reversed(cs))
    return IntPoly([c if c.denominator != 1 else c.numerator for c in out])


def _fr_mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)]


def nf_norm(x):
    cp = nf_charpoly(x)
    n = x.field.n
    return (-1) ** n * cp.coeffs[0]


def nf_trace(x):
    cp = nf_charpoly(x)
    return -cp.coeffs[x.field.n - 1]


def is_integral(x):
    """True when the characteristic polynomial has integer coefficients."""
    return nf_charpoly(x).is_integral()


def charpoly_content(x):
    """Content of the characteristic polynomial's coefficient list."""
    return nf_charpoly(x).content()


def content_removed(x):
    """Strip the integer content from x, with the extra dyadic refinement.

    Returns (s, N): N starts as the gcd of the coordinates and s = x/N;
    then s is halved as long as s/2 stays integral, folding those factors
    of 2 into N.  Requires integral coordinates.
    """
    if x.is_zero():
        raise ValueError("content of zero")
    cs = [Fraction(c) for c in x.coords]
    if any(c.denominator != 1 for c in cs):
        raise ValueError("coordinates are not integral")
    g = 0
    for c in cs:
        g = gcd(g, c.numerator)
    s = x.field.elem([c / g for c in cs])
    n = g
    while True:
        half = s.field.elem([c / 2 for c in s.coords])
        if is_integral(half):
            s = half
            n *= 2
        else:
            break
    return s, n


def residue_image(x, l, factor):
    """Image of x in F_{l^d} under a -> (least root of factor), d = deg factor.

    factor must divide the defining polynomial mod l, and the coordinate
    denominators must be prime to l.
    """
    fld = x.field
    d = factor.degree
    Fq = finite_field(l, d)
    fl = ffp_from_coeffs(Fq, fld.f.coeffs)
    gl = ffp_from_coeffs(Fq, factor.coeffs)
    from .finitefield import ffp_divmod
    if ffp_divmod(fl, gl)[1]:
        raise ValueError("factor does not divide the defining polynomial mod %d" % l)
    roots = ff_roots(gl, Fq)
    if not roots:
        raise ValueError("factor has no root in its own residue field")
    r = roots[0]
    out = Fq.zero()
    for c in reversed(x.coords):
        c = Fraction(c)
        if c.denominator % l == 0:
            raise ValueError("denominator divisible by %d" % l)
        cl = c.numerator * pow(c.denominator, -1, l) % l
        out = out * r + Fq.elem(cl)
    return out


def totally_positive(x):
    """All real embeddings positive, for x in a totally real field.

    The minimal polynomial of x has only real roots, so positivity of all
    of them is exactly strict sign alternation of the coefficients.
    """
    if not x.field.is_totally_real():
        raise ValueError("field is not totally real")
    mp = squarefree_part(nf_charpoly(x))
    signs = []
    for c in reversed(mp.coeffs):
        signs.append(1 if c > 0 else (-1 if c < 0 else 0))
    if 0 in signs:
        return False
    return all(a == -b for a, b in zip(signs, signs[1:]))


# ---------------------------------------------------------------------------
# Quartic Galois group test

def resolvent_cubic(f):
    """Resolvent cubic of a monic quartic, roots x1x2 + x3x4 and friends."""
    if f.degree != 4 or f.lc != 1:
        raise ValueError("monic quartic required")
    d, c, b, a = f.coeffs[0], f.coeffs[1], f.coeffs[2], f.coeffs[3]
    return IntPoly([-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1])


def galois_group_is_A4(f):
    """True iff the quartic has square discriminant and irreducible resolvent."""
    if f.degree != 4 or f.lc != 1:
        raise ValueError("monic quartic required")
    if not _certify_irreducible(f):
        raise ValueError("quartic is reducible")
    disc = poly_discriminant(f)
    if disc <= 0:
        return False
    r = _isqrt(disc)
    if r * r != disc:
        return False
    return not _has_rational_root(resolvent_cubic(f))


# ---------------------------------------------------------------------------
# The relative extension K = F[b], b a root of f(x)/(x - a)

_TERM_RE = re.compile(
    r"^(?P<coef>[+-]?\d*)"
    r"(?P<apart>\*?a(?:\^(?P<ai>\d+))?)?"
    r"(?P<bpart>\*?b(?:\^(?P<bi>\d+))?)?$")


def parse_gexpr(text):
    """Parse 'c*a^i*b^j +- ...' into a dict {(i, j): c}.

    The coefficient may be omitted (meaning 1), as may either variable.
    """
    s = text.replace("-", "+-").replace(" ", "")
    out = {}
    got_any = False
    for chunk in s.split("+"):
        if not chunk:
            continue
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coef") in ("", "+", "-")
                     and not m.group("apart") and not m.group("bpart")):
            raise ValueError("bad term %r in g expression" % chunk)
        coef = m.group("coef")
        if coef in ("", "+"):
            c = 1
        elif coef == "-":
            c = -1
        else:
            c = int(coef)
        ai = int(m.group("ai") or 1) if m.group("apart") else 0
        bi = int(m.group("bi") or 1) if m.group("bpart") else 0
        out[(ai, bi)] = out.get((ai, bi), 0) + c
        got_any = True
    if not got_any:
        raise ValueError("empty g expression")
    return out


def relative_companion(field):
    """The companion matrix of f(x)/(x - a) over F, a 3x3 for quartic f.

    Division is synthetic, exact in F[x]; rows follow the convention that
    the matrix acts on the coordinate row (1, b, b^2, ...).
    """
    n = field.n
    a = field.gen()
    # synthetic division of f by (x - a): quotient degree n-1, coeffs in F
    qs = []
    carry = field.one()
    for i in range(n - 1, -1, -1):
        qs.append(carry)
        carry = carry * a + field.elem(field.f.coeffs[i])
    # qs holds leading-first quotient coefficients; carry is f(a) = 0
    assert carry.is_zero()
    qs.reverse()  # low degree first, length n, monic
    m = n - 1
    rows = []
    for i in range(m - 1):
        rows.append([field.one() if j == i + 1 else field.zero()
                     for j in range(m)])
    rows.append([-qs[j] for j in range(m)])
    return rows


def _nf_mat_mul(a, b, field):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = field.zero()
            for t in range(n):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def _nf_mat_scale(mat, c):
    return [[c * x for x in row] for row in mat]


def _nf_mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _det3(m, field):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def rel_norm(gexpr, field):
    """Norm from K = F[b] down to F of a bivariate expression in a and b.

    gexpr is a parse_gexpr dict or its text form.  The norm is computed as
    the determinant of gexpr evaluated at (a, companion matrix of f/(x-a)).
    """
    if isinstance(gexpr, str):
        gexpr = parse_gexpr(gexpr)
    if field.n != 4:
        raise ValueError("relative norm is set up for quartic base fields")
    bmat = relative_companion(field)
    m = len(bmat)
    a = field.gen()
    zero = [[field.zero()] * m for _ in range(m)]
    ident = [[field.one() if i == j else field.zero() for j in range(m)]
             for i in range(m)]
    # precompute powers of b
    maxb = max((bi for (_, bi) in gexpr), default=0)
    bpow = [ident]
    for _ in range(maxb):
        bpow.append(_nf_mat_mul(bpow[-1], bmat, field))
    acc = zero
    for (ai, bi), c in sorted(gexpr.items()):
        if c == 0:
            continue
        term = _nf_mat_scale(bpow[bi], field.elem(c) * a ** ai)
        acc = _nf_mat_add(acc, term)
    return _det3(acc, field)
