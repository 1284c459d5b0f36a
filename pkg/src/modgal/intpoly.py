"""Exact univariate polynomial arithmetic over Z and Q.

Coefficients are stored low degree first with no trailing zeros; the zero
polynomial has an empty coefficient tuple.  Everything runs on arbitrary
precision integers or Fractions, never on floats.
"""

from fractions import Fraction
from math import gcd


class IntPoly:
    """A univariate polynomial with integer or exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "IntPoly(%r)" % (list(self.coeffs),)

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, IntPoly) else -IntPoly([other]))

    def __rsub__(self, other):
        return IntPoly([other]) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return IntPoly([c * other for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = IntPoly([1])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __call__(self, x):
        """Evaluate at x by Horner's rule; x may be any ring element."""
        r = 0
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def derivative(self):
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self):
        """Gauss content: the positive rational c with self/c primitive integral.

        Returns 0 for the zero polynomial, an int when it divides all
        coefficients exactly, otherwise a Fraction.
        """
        if not self.coeffs:
            return 0
        num = 0
        den = 1
        for c in self.coeffs:
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        c = Fraction(num, den)
        return c.numerator if c.denominator == 1 else c

    def primitive(self):
        """self divided by its content; sign of the leading coefficient kept."""
        c = self.content()
        if c == 0:
            return self
        return IntPoly([int(Fraction(x) / c) for x in self.coeffs])

    def monic(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no monic scaling")
        l = Fraction(self.lc)
        out = [Fraction(c) / l for c in self.coeffs]
        return IntPoly([c if c.denominator != 1 else c.numerator for c in out])

    def is_integral(self):
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def map_coeffs(self, fn):
        return IntPoly([fn(c) for c in self.coeffs])


def poly_x():
    return IntPoly([0, 1])


def poly_divmod(f, g):
    """Division with remainder over Q.  Returns (quotient, remainder)."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in f.coeffs]
    dg = g.degree
    if f.degree < dg:
        return IntPoly([]), IntPoly(rem)
    glc = Fraction(g.lc)
    q = [Fraction(0)] * (len(rem) - dg)
    for top in range(len(rem) - 1, dg - 1, -1):
        c = rem[top] / glc
        if c:
            q[top - dg] = c
            for i, gc in enumerate(g.coeffs):
                rem[top - dg + i] -= c * Fraction(gc)
    return IntPoly(q), IntPoly(rem[:dg])


def poly_gcd(f, g):
    """Greatest common divisor, returned primitive with positive leading coefficient."""
    a, b = f, g
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    a = a.primitive()
    if a.lc < 0:
        a = -a
    return a


def squarefree_part(f):
    """f divided by gcd(f, f'), primitive, leading sign preserved."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    g = poly_gcd(f, f.derivative())
    q, r = poly_divmod(f, g)
    assert r.is_zero()
    q = q.primitive()
    if (q.lc < 0) != (f.lc < 0):
        q = -q
    return q


# ---------------------------------------------------------------------------
# Sturm sequences

def _sturm_chain(f):
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        _, r = poly_divmod(chain[-2], chain[-1])
        chain.append(-r)
    chain.pop()
    return chain


def _sign_at(f, x):
    # x is a Fraction, or the strings "-inf"/"+inf"
    if x == "+inf":
        v = f.lc
    elif x == "-inf":
        v = f.lc * (-1) ** (f.degree % 2) if f.coeffs else 0
    else:
        v = f(x)
    return (v > 0) - (v < 0)


def _variations(chain, x):
    signs = [s for s in (_sign_at(f, x) for f in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_count(f, lo=None, hi=None):
    """Number of distinct real roots of a squarefree polynomial.

    With bounds given, counts roots in the half-open interval (lo, hi].
    Raises ValueError when f is not squarefree, since the Sturm count
    would silently ignore multiplicities.
    """
    if f.degree <= 0:
        if f.is_zero():
            raise ValueError("zero polynomial is not squarefree")
        return 0
    if poly_gcd(f, f.derivative()).degree > 0:
        raise ValueError("polynomial is not squarefree")
    chain = _sturm_chain(f)
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _variations(chain, a) - _variations(chain, b)


# ---------------------------------------------------------------------------
# Resultants and discriminants

def bareiss_det(rows):
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by the Bareiss identity
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f, g):
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise ValueError("resultant of a zero polynomial")
    size = m + n
    fs = list(reversed(f.coeffs))
    gs = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fs + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + gs + [0] * (size - i - n - 1))
    return rows


def resultant(f, g):
    """Res(f, g) for integer polynomials, via the Sylvester determinant."""
    for c in f.coeffs + g.coeffs:
        if not isinstance(c, int):
            raise TypeError("resultant wants integer coefficients")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return bareiss_det(sylvester_matrix(f, g))


def poly_discriminant(f):
    """Exact integer discriminant of f, degree 2 or more."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = resultant(f, f.derivative())
    s = (-1) ** (n * (n - 1) // 2)
    q, rem = divmod(s * r, f.lc)
    assert rem == 0
    return q


# ---------------------------------------------------------------------------
# Text form: whitespace separated coefficients, low degree first

def poly_to_text(f):
    if not f.coeffs:
        return "0"
    return " ".join(str(c) for c in f.coeffs)


def poly_from_text(s):
    parts = s.split()
    if not parts:
        raise ValueError("empty polynomial text")
    return IntPoly([int(c) for c in parts])
