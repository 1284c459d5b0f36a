"""Finite fields F_{p^k} with canonical moduli and deterministic factoring.

The canonical modulus of F_{p^k} is the lexicographically least monic
irreducible of degree k, coefficients compared low to high as integers in
0..p-1.  The canonical generator is the least element of full multiplicative
order under the same ordering.  Equal-degree splitting is randomized but
seeded from the input, so every factorization is reproducible bit for bit.
"""

import random
from .intpoly import IntPoly


# ---------------------------------------------------------------------------
# Integer helpers

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid far beyond the sizes used here."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    # Brent's cycle variant with a fixed constant sequence; n odd composite
    if n % 2 == 0:
        return 2
    from math import gcd
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError("rho failed on %d" % n)


def factorize(n):
    """Prime factorization as a sorted list of (prime, exponent)."""
    if n <= 0:
        raise ValueError("factorize wants a positive integer")
    out = {}
    for q in (2, 3, 5):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    d = 7
    while d * d <= n and d < 10 ** 6:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return sorted(out.items())


def legendre(a, p):
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


# ---------------------------------------------------------------------------
# Polynomial arithmetic over F_p on plain coefficient tuples, low degree
# first.  Used for modulus search and element arithmetic.

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    binv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * binv % p
        q[len(a) - 1 - db] = c
        for i in range(len(b)):
            a[len(a) - 1 - db + i] = (a[len(a) - 1 - db + i] - c * b[i]) % p
        a = _ptrim(a)
    return _ptrim(q), a


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(a, e, m, p):
    r = [1]
    a = _pdivmod(a, m, p)[1]
    while e:
        if e & 1:
            r = _pdivmod(_pmul(r, a, p), m, p)[1]
        a = _pdivmod(_pmul(a, a, p), m, p)[1]
        e >>= 1
    return r


def _is_irreducible(f, p):
    # Rabin's test; f monic of degree >= 1
    k = len(f) - 1
    x = [0, 1]
    if _ppowmod(x, p ** k, f, p) != _pdivmod(x, f, p)[1]:
        return False
    for r, _ in factorize(k):
        h = _psub(_ppowmod(x, p ** (k // r), f, p), x, p)
        if len(_pgcd(h, f, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------

_FIELD_CACHE = {}


def finite_field(p, k=1):
    """The canonical field with p^k elements (cached)."""
    key = (p, k)
    fld = _FIELD_CACHE.get(key)
    if fld is None:
        fld = FiniteField(p, k)
        _FIELD_CACHE[key] = fld
    return fld


class FiniteField:
    """F_{p^k} with the canonical modulus.  Use finite_field() to construct."""

    __slots__ = ("p", "k", "q", "modulus", "_gen", "_q1_factors")

    def __init__(self, p, k=1):
        if not is_prime(p):
            raise ValueError("%d is not prime" % p)
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = self._canonical_modulus()
        self._gen = None
        self._q1_factors = None

    def _canonical_modulus(self):
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)
        # walk monic degree-k polynomials in lex order on (c0, .., c_{k-1})
        for idx in range(p ** k):
            cs = []
            t = idx
            for _ in range(k):
                cs.append(t // p ** (k - 1))
                t = t % p ** (k - 1) * p
            f = cs + [1]
            if _is_irreducible(f, p):
                return tuple(f)
        raise AssertionError("no irreducible polynomial found")

    # -- element plumbing ---------------------------------------------------

    def elem(self, v):
        """Coerce an int, an FFElem, or a coefficient sequence into the field."""
        if isinstance(v, FFElem):
            if v.field is self:
                return v
            if v.field.p == self.p and v.field.k == 1:
                return FFElem(self, self._pad([v.rep[0]]))
            raise ValueError("element belongs to a different field")
        if isinstance(v, int):
            return FFElem(self, self._pad([v % self.p]))
        rep = [int(c) % self.p for c in v]
        if len(rep) > self.k:
            rep = _pdivmod(rep, list(self.modulus), self.p)[1]
        return FFElem(self, self._pad(rep))

    def _pad(self, c):
        c = list(c)[: self.k]
        return tuple(c + [0] * (self.k - len(c)))

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def gen_x(self):
        """The residue class of x, a root of the modulus."""
        return self.elem([0, 1] if self.k > 1 else [0])

    def elem_from_index(self, i):
        # digits of i base p, most significant first, mirror enumeration order
        cs = []
        for j in range(self.k - 1, -1, -1):
            cs.append(i // self.p ** j % self.p)
        return FFElem(self, tuple(cs))

    def index_of(self, x):
        i = 0
        for c in x.rep:
            i = i * self.p + c
        return i

    def elements(self):
        for i in range(self.q):
            yield self.elem_from_index(i)

    def q1_factorization(self):
        if self._q1_factors is None:
            self._q1_factors = factorize(self.q - 1)
        return self._q1_factors

    def generator(self):
        """Least element of full multiplicative order q - 1."""
        if self._gen is not None:
            return self._gen
        facs = self.q1_factorization()
        for i in range(1, self.q):
            x = self.elem_from_index(i)
            if all(x ** ((self.q - 1) // r) != self.one() for r, _ in facs):
                self._gen = x
                return x
        raise AssertionError("no generator found")

    def __repr__(self):
        return "FiniteField(%d, %d)" % (self.p, self.k)

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.k) == (other.p, other.k))

    def __hash__(self):
        return hash((self.p, self.k))


class FFElem:
    """An element of a FiniteField, rep stored low degree first, length k."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed fields %r and %r"
                                 % (self.field, other.field))
            return other
        if isinstance(other, int):
            return self.field.elem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        return FFElem(f, f._pad(_padd(list(self.rep), list(o.rep), f.p)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return FFElem(f, tuple((-c) % f.p for c in self.rep))

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
        f = self.field
        prod = _pmul(list(self.rep), list(o.rep), f.p)
        if len(prod) >= f.k and f.k > 1:
            prod = _pdivmod(prod, list(f.modulus), f.p)[1]
        elif f.k == 1:
            prod = _ptrim([c % f.p for c in prod])
        return FFElem(f, f._pad(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.k == 1:
            return FFElem(f, (pow(self.rep[0], -1, f.p),))
        # extended Euclid against the modulus
        a, b = list(f.modulus), _ptrim(list(self.rep))
        s0, s1 = [], [1]
        while b:
            q, r = _pdivmod(a, b, f.p)
            a, b = b, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, f.p), f.p)
        inv = pow(a[0], -1, f.p)
        return FFElem(f, f._pad([c * inv % f.p for c in s0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.elem(other) / self

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

    def is_zero(self):
        return all(c == 0 for c in self.rep)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.elem(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.rep))

    def __repr__(self):
        if self.field.k == 1:
            return "%d" % self.rep[0]
        return "FF(%d^%d)%r" % (self.field.p, self.field.k, list(self.rep))

    def to_digits(self):
        """Low-first list of k base-p digits, the file interchange form."""
        return list(self.rep)


def ff_is_square(x):
    """Euler criterion; zero counts as a square."""
    if x.is_zero():
        return True
    return x ** ((x.field.q - 1) // 2) == x.field.one()


def ff_root_of_unity(field, h):
    """A deterministic element of exact order h: generator^((q-1)/h)."""
    if h < 1 or (field.q - 1) % h != 0:
        raise ValueError("%d does not divide %d" % (h, field.q - 1))
    return field.generator() ** ((field.q - 1) // h)


# ---------------------------------------------------------------------------
# Polynomials over a FiniteField: plain lists of FFElem, low degree first.

def ffp_from_coeffs(field, cs):
    out = [field.elem(c) for c in cs]
    while out and out[-1].is_zero():
        out.pop()
    return out


def ffp_trim(f):
    f = list(f)
    while f and f[-1].is_zero():
        f.pop()
    return f


def ffp_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else None
        y = b[i] if i < len(b) else None
        out.append(y if x is None else (x if y is None else x + y))
    return ffp_trim(out)


def ffp_neg(a):
    return [-c for c in a]


def ffp_sub(a, b):
    return ffp_add(a, ffp_neg(b))


def ffp_mul(a, b):
    if not a or not b:
        return []
    field = (a or b)[0].field
    out = [field.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return ffp_trim(out)


def ffp_scale(a, c):
    return ffp_trim([x * c for x in a])


def ffp_divmod(a, b):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    inv = b[-1].inverse()
    db = len(b) - 1
    field = b[0].field
    q = [field.zero() for _ in range(max(0, len(a) - db))]
    while a and len(a) - 1 >= db:
        c = a[-1] * inv
        q[len(a) - 1 - db] = c
        for i in range(len(b)):
            a[len(a) - 1 - db + i] = a[len(a) - 1 - db + i] - c * b[i]
        a.pop()
        a = ffp_trim(a)
    return ffp_trim(q), ffp_trim(a)


def ffp_gcd(a, b):
    while b:
        a, b = b, ffp_divmod(a, b)[1]
    if a:
        a = ffp_scale(a, a[-1].inverse())
    return a


def ffp_powmod(a, e, m):
    field = m[0].field
    r = [field.one()]
    a = ffp_divmod(a, m)[1]
    while e:
        if e & 1:
            r = ffp_divmod(ffp_mul(r, a), m)[1]
        a = ffp_divmod(ffp_mul(a, a), m)[1]
        e >>= 1
    return r


def ffp_eval(f, x):
    r = x.field.zero()
    for c in reversed(f):
        r = r * x + c
    return r


def ffp_monic(f):
    if not f:
        return f
    return ffp_scale(f, f[-1].inverse())


def _ffp_key(f):
    # deterministic sort key: degree, then coefficient reps low to high
    return (len(f) - 1, tuple(c.rep for c in f))


def _pth_root(x):
    # Frobenius is an automorphism, so the p-th root is x^(p^(k-1))
    return x ** (x.field.p ** (x.field.k - 1))


def _squarefree_decomposition(f, field):
    """Monic f -> list of (monic squarefree factor, multiplicity)."""
    p = field.p
    out = []
    if len(f) <= 1:
        return out
    deriv = ffp_trim([f[i] * i for i in range(1, len(f))])
    if not deriv:
        # f is a polynomial in x^p; take the p-th root and recurse
        g = [_pth_root(f[i]) for i in range(0, len(f), p)]
        for h, m in _squarefree_decomposition(ffp_trim(g), field):
            out.append((h, m * p))
        return out
    c = ffp_gcd(f, deriv)
    w = ffp_divmod(f, c)[0]
    i = 1
    while len(w) > 1:
        y = ffp_gcd(w, c)
        z = ffp_divmod(w, y)[0]
        if len(z) > 1:
            out.append((ffp_monic(z), i))
        i += 1
        w = y
        c = ffp_divmod(c, y)[0]
    if len(c) > 1:
        g = [_pth_root(c[j]) for j in range(0, len(c), p)]
        for h, m in _squarefree_decomposition(ffp_trim(g), field):
            out.append((h, m * p))
    return out


def _distinct_degree(f, field):
    """Squarefree monic f -> list of (product of degree-d factors, d)."""
    out = []
    v = list(f)
    x = ffp_from_coeffs(field, [0, 1])
    h = list(x)
    d = 0
    while len(v) - 1 > 2 * d:
        d += 1
        h = ffp_powmod(h, field.q, v)
        g = ffp_gcd(ffp_sub(h, x), v)
        if len(g) > 1:
            out.append((g, d))
            v = ffp_divmod(v, g)[0]
            h = ffp_divmod(h, v)[1]
    if len(v) > 1:
        out.append((v, len(v) - 1))
    return out


def _random_ffpoly(rng, field, deg):
    return ffp_trim([field.elem_from_index(rng.randrange(field.q))
                     for _ in range(deg)])


def _equal_degree_split(f, d, field, rng):
    """Cantor-Zassenhaus split of monic squarefree f, all factors degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        u = _random_ffpoly(rng, field, n)
        if len(u) <= 1:
            continue
        g = ffp_gcd(u, f)
        if 1 < len(g) < len(f):
            pass
        elif field.p == 2:
            # char 2: additive trace map instead of the power map
            t = list(u)
            acc = list(u)
            for _ in range(d * field.k - 1):
                acc = ffp_powmod(acc, 2, f)
                t = ffp_add(t, acc)
            g = ffp_gcd(t, f)
        else:
            e = (field.q ** d - 1) // 2
            t = ffp_sub(ffp_powmod(u, e, f), [field.one()])
            g = ffp_gcd(t, f)
        if 1 < len(g) < len(f):
            left = _equal_degree_split(g, d, field, rng)
            right = _equal_degree_split(ffp_divmod(f, g)[0], d, field, rng)
            return left + right


def ff_factor(f, field):
    """Factor a nonzero polynomial over the field.

    Returns (unit, [(monic irreducible, multiplicity), ...]) with the factor
    list sorted by degree then coefficients; the unit times the product of
    factor powers reproduces f exactly.
    """
    f = ffp_trim(list(f))
    if not f:
        raise ValueError("factor of zero polynomial")
    unit = f[-1]
    f = ffp_monic(f)
    seed = "ff_factor:%d:%d:%s" % (field.p, field.k,
                                   [tuple(c.rep) for c in f])
    rng = random.Random(seed)
    out = []
    for sq, mult in _squarefree_decomposition(f, field):
        for block, d in _distinct_degree(sq, field):
            for irr in _equal_degree_split(block, d, field, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: _ffp_key(t[0]))
    return unit, out


def ff_roots(f, field):
    """Sorted roots (by canonical element order) of f in the field."""
    _, facs = ff_factor(f, field)
    roots = [(-g[0]) for g, _ in facs if len(g) == 2]
    roots.sort(key=field.index_of)
    return roots


# ---------------------------------------------------------------------------
# Factoring integer polynomials modulo l, and Hensel lifting

def factor_poly_mod_l(f, l):
    """Factor f modulo the prime l into monic irreducibles.

    Returns a list of (IntPoly with coefficients in 0..l-1, multiplicity),
    sorted by degree then coefficients.  Constant polynomials give [].
    """
    if f.is_zero():
        raise ValueError("factor of zero polynomial")
    if not is_prime(l):
        raise ValueError("%d is not prime" % l)
    field = finite_field(l)
    fl = ffp_from_coeffs(field, f.coeffs)
    if len(fl) <= 1:
        return []
    _, facs = ff_factor(fl, field)
    return [(IntPoly([c.rep[0] for c in g]), m) for g, m in facs]


def _zmod_divmod(a, b, n):
    # division by a monic b over Z/n
    a = [c % n for c in a]
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    while a and len(a) - 1 >= db:
        c = a[-1]
        q[len(a) - 1 - db] = c
        for i in range(len(b)):
            a[len(a) - 1 - db + i] = (a[len(a) - 1 - db + i] - c * b[i]) % n
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _zmod_mul(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % n
    while out and out[-1] == 0:
        out.pop()
    return out


def _bezout_mod_l(g, h, l):
    # s*g + t*h = 1 over F_l for coprime g, h
    r0, r1 = list(g), list(h)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, l)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, l), l)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, l), l)
    inv = pow(r0[0], -1, l)
    return [c * inv % l for c in s0], [c * inv % l for c in t0]


def _hensel_pair(f, g, h, l, e):
    """Lift f = g*h from mod l to mod l^e; g, h monic and coprime mod l."""
    s, t = _bezout_mod_l(g, h, l)
    G, H = list(g), list(h)
    m = l
    for _ in range(e - 1):
        n = m * l
        prod = _zmod_mul(G, H, n)
        width = max(len(f.coeffs), len(prod))
        fc = list(f.coeffs) + [0] * (width - len(f.coeffs))
        pc = prod + [0] * (width - len(prod))
        ehat = _ptrim([((a - b) % n) // m % l for a, b in zip(fc, pc)])
        gl = [c % l for c in G]
        hl = [c % l for c in H]
        qg, dg = _pdivmod(_pmul(t, ehat, l), gl, l)
        # dh = (ehat - h*dg)/g over F_l; exact, equal to s*ehat + h*qg by
        # the Bezout identity, and of degree < deg h
        dh = _padd(_pmul(s, ehat, l), _pmul(hl, qg, l), l)
        assert len(dh) < len(H)
        G = [(G[i] + m * (dg[i] if i < len(dg) else 0)) % n
             for i in range(len(G))]
        H = [(H[i] + m * (dh[i] if i < len(dh) else 0)) % n
             for i in range(len(H))]
        m = n
    return G, H


def hensel_lift_factors(f, l, e):
    """Factors of f modulo l^e, congruent mod l to factor_poly_mod_l(f, l).

    f must be squarefree mod l with leading coefficient prime to l.  The
    returned polynomials are monic over Z/l^e; their product times the
    leading unit reproduces f mod l^e.
    """
    if f.lc % l == 0:
        raise ValueError("leading coefficient vanishes mod %d" % l)
    facs = factor_poly_mod_l(f, l)
    if any(m > 1 for _, m in facs):
        raise ValueError("polynomial is not squarefree mod %d" % l)
    if e < 1:
        raise ValueError("lift exponent must be positive")
    n = l ** e
    lcinv = pow(f.lc % n, -1, n)
    fm = IntPoly([c * lcinv % n for c in f.coeffs])

    def lift_list(target, parts):
        if len(parts) == 1:
            return [list(target.coeffs)]
        mid = len(parts) // 2
        gl = parts[:mid]
        hl = parts[mid:]
        g1 = [1]
        for q in gl:
            g1 = _pmul(g1, list(q.coeffs), l)
        h1 = [1]
        for q in hl:
            h1 = _pmul(h1, list(q.coeffs), l)
        G, H = _hensel_pair(target, g1, h1, l, e)
        return (lift_list(IntPoly([c % n for c in G]), gl)
                + lift_list(IntPoly([c % n for c in H]), hl))

    lifted = lift_list(fm, [q for q, _ in facs])
    return [IntPoly([c % n for c in q]) for q in lifted]
