"""Mod-p Galois representations as explicit trees.

Atoms are power-of-cyclotomic characters, dihedral representations
induced from real quadratic class group characters, and two-dimensional
double-cover representations of A4 quartic fields; nodes are twist,
direct sum, symmetric square, and contragredient.  Every representation
answers three queries: det(I - rho(Frob_l) X), the eigenvalues of
rho(Frob_infinity), and the tame inertia exponents at p.
"""

from math import gcd

from .intpoly import IntPoly, poly_discriminant, poly_divmod
from .finitefield import (finite_field, is_prime, factorize, legendre,
                          factor_poly_mod_l, ff_roots, ffp_from_coeffs)
from .numfield import NumberField, residue_image
from .quadforms import (ClassGroup, prime_form, compose, class_order)
from .finitefield import ff_is_square


# ---------------------------------------------------------------------------
# Dirichlet characters

def _crt_pair(r1, m1, r2, m2):
    # m1, m2 coprime
    inv = pow(m1 % m2, -1, m2) if m2 > 1 else 0
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)


def _least_primitive_root(q, e):
    m = q ** e
    phi = q ** (e - 1) * (q - 1)
    fac = [f for f, _ in factorize(phi)]
    for g in range(2, m):
        if g % q == 0:
            continue
        if all(pow(g, phi // f, m) != 1 for f in fac):
            return g
    raise AssertionError("no primitive root mod %d" % m)


def standard_generators(n):
    """Canonical generating set of (Z/n)^* as (element, order) pairs.

    Odd prime power parts contribute their least primitive root; the
    2-part contributes -1, and also 5 when 8 divides n.  Elements are
    CRT-lifted to residues mod n.
    """
    if n <= 2:
        return []
    parts = sorted(factorize(n))
    gens = []
    for q, e in parts:
        m = q ** e
        rest = n // m
        if q == 2:
            if e == 1:
                continue
            lift = _crt_pair(m - 1, m, 1 % rest if rest > 1 else 0, rest) if rest > 1 else m - 1
            gens.append((lift, 2))
            if e >= 3:
                lift5 = _crt_pair(5, m, 1 % rest if rest > 1 else 0, rest) if rest > 1 else 5
                gens.append((lift5, 2 ** (e - 2)))
        else:
            g = _least_primitive_root(q, e)
            order = q ** (e - 1) * (q - 1)
            lift = _crt_pair(g, m, 1 % rest if rest > 1 else 0, rest) if rest > 1 else g
            gens.append((lift, order))
    return gens


class DirichletChar:
    """Character of (Z/N)^* with values in a finite field.

    Stored as the full value table; gen_values gives the values on
    standard_generators(N) in order.  Evaluation at integers not coprime
    to N returns the field zero.
    """

    def __init__(self, modulus, field, gen_values=None):
        self.modulus = modulus
        self.field = field
        gens = standard_generators(modulus)
        if gen_values is None:
            gen_values = [field.one()] * len(gens)
        gen_values = [field.elem(v) for v in gen_values]
        if len(gen_values) != len(gens):
            raise ValueError("expected %d generator values" % len(gens))
        for (_, order), v in zip(gens, gen_values):
            if v ** order != field.one():
                raise ValueError("character value has wrong order")
        self.gen_values = gen_values
        self._table = self._build_table(gens, gen_values)

    def _build_table(self, gens, vals):
        n = self.modulus
        table = {1 % n: self.field.one()}
        for (g, order), v in zip(gens, vals):
            new = {}
            for a, va in table.items():
                cur_a, cur_v = a, va
                for _ in range(order):
                    if cur_a in new:
                        break
                    new[cur_a] = cur_v
                    cur_a = (cur_a * g) % n
                    cur_v = cur_v * v
            table = new
        return table

    def __call__(self, a):
        n = self.modulus
        if n == 1:
            return self.field.one()
        a %= n
        if gcd(a, n) != 1:
            return self.field.zero()
        return self._table[a]

    def is_trivial(self):
        return all(v == self.field.one() for v in self._table.values())

    def parity(self):
        """chi(-1) as an integer sign."""
        v = self(-1)
        return 1 if v == self.field.one() else -1

    @property
    def conductor(self):
        n = self.modulus
        for m in sorted(d for d in range(1, n + 1) if n % d == 0):
            if all(self._table[a] == self.field.one()
                   for a in self._table if a % m == 1 % m):
                return m
        return n

    def restrict(self, m):
        """The character mod m inducing this one; m must be a multiple of
        the conductor dividing the modulus."""
        if self.modulus % m != 0 or m % self.conductor != 0:
            raise ValueError("bad restriction modulus")
        gens = standard_generators(m)
        vals = []
        for g, _ in gens:
            # lift g to a residue mod modulus coprime to it
            lift = g
            while gcd(lift, self.modulus) != 1:
                lift += m
            vals.append(self(lift))
        return DirichletChar(m, self.field, vals)

    def __mul__(self, other):
        if self.field is not other.field:
            raise ValueError("characters over different fields")
        n = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        gens = standard_generators(n)
        vals = [self(g) * other(g) for g, _ in gens]
        return DirichletChar(n, self.field, vals)

    def inverse(self):
        gens = standard_generators(self.modulus)
        vals = [v.inverse() for v in self.gen_values]
        return DirichletChar(self.modulus, self.field, vals)

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return (self.modulus == other.modulus and self.field is other.field
                and self._table == other._table)

    def __repr__(self):
        return "DirichletChar(mod %d over F_%d^%d)" % (
            self.modulus, self.field.p, self.field.k)


def trivial_char(field, modulus=1):
    return DirichletChar(modulus, field)


# ---------------------------------------------------------------------------
# Frobenius classes in A4 and the double cover trace table

_A4HAT_TRACES = {
    ("identity", 1): 2,
    ("identity", 2): -2,
    ("three_cycle", 3): -1,
    ("three_cycle", 6): 1,
    ("double_transposition", 4): 0,
}

_TABLE_CHECKED = False


def verify_a4hat_traces():
    """Check the trace table against the 24-element double cover in SL2.

    Builds the group generated by the standard order-4 and order-3
    matrices over F9 and compares each element's trace, keyed by element
    order, with the hard-coded table reduced mod 3.  Identity and -I
    traces are +-2 identically, so the mod-3 comparison pins every entry
    that the characteristic-zero structure does not force.
    """
    global _TABLE_CHECKED
    if _TABLE_CHECKED:
        return
    F = finite_field(3, 2)
    one, zero = F.one(), F.zero()

    def mat(a, b, c, d):
        return (F.elem(a), F.elem(b), F.elem(c), F.elem(d))

    def mul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    ident = (one, zero, zero, one)
    gens = [mat(0, -1, 1, 0), mat(1, 1, 0, 1)]
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                mg = mul(m, g)
                if mg not in group:
                    group.add(mg)
                    nxt.append(mg)
        frontier = nxt
    assert len(group) == 24, "double cover closure has wrong size"

    order_to_trace = {1: 2, 2: -2, 3: -1, 4: 0, 6: 1}
    for m in group:
        k, cur = 1, m
        while cur != ident:
            cur = mul(cur, m)
            k += 1
            assert k <= 6
        tr = m[0] + m[3]
        expect = F.elem(order_to_trace[k])
        assert tr == expect, "trace table fails at order %d" % k
    # the lift order is the order of the lifted element, so the table must
    # agree with the group computation entry by entry
    for (_label, lift), t in _A4HAT_TRACES.items():
        assert order_to_trace[lift] == t
    _TABLE_CHECKED = True


class FrobClassA4:
    """Conjugacy data of Frob_l: the A4 class and the double-cover lift."""

    __slots__ = ("label", "lift_order")

    def __init__(self, label, lift_order):
        if (label, lift_order) not in _A4HAT_TRACES:
            raise ValueError("inconsistent class data")
        self.label = label
        self.lift_order = lift_order

    @property
    def trace(self):
        return _A4HAT_TRACES[(self.label, self.lift_order)]

    def __repr__(self):
        return "FrobClassA4(%s, lift %d)" % (self.label, self.lift_order)


def a4_frob_class(f, s, l, nf=None):
    """Frobenius class at l for the A4 quartic f with resolvent datum s.

    The factorization shape of f mod l fixes the A4 class; whether s is a
    square in the residue field of the deterministically-first factor
    fixes the double-cover lift.
    """
    if l == 2:
        raise ValueError("l must be odd")
    facs = factor_poly_mod_l(f, l)
    if any(m > 1 for _, m in facs):
        raise ValueError("bad prime")
    shape = sorted(g.degree for g, _ in facs)
    if shape == [1, 1, 1, 1]:
        label = "identity"
    elif shape == [1, 3]:
        label = "three_cycle"
    elif shape == [2, 2]:
        label = "double_transposition"
    else:
        raise ValueError("not an A4 polynomial at %d" % l)
    if label == "double_transposition":
        return FrobClassA4(label, 4)
    if nf is None:
        nf = NumberField(f, assume_irreducible=True)
    first = facs[0][0]
    img = residue_image(nf.elem(s), l, first)
    if ff_is_square(img):
        lift = 3 if label == "three_cycle" else 1
    else:
        lift = 6 if label == "three_cycle" else 2
    return FrobClassA4(label, lift)


# ---------------------------------------------------------------------------
# cyclotomic helpers for dihedral trace fields

def _cyclotomic(n):
    f = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q, r = poly_divmod(f, _cyclotomic(d))
            assert r.is_zero()
            f = q.map_coeffs(int)
    return f


def _dickson_int(j):
    """x^j + x^-j as a polynomial in y = x + x^-1, integer coefficients."""
    d0, d1 = IntPoly([2]), IntPoly([0, 1])
    if j == 0:
        return d0
    y = IntPoly([0, 1])
    for _ in range(j - 1):
        d0, d1 = d1, y * d1 - d0
    return d1

def _cos_minpoly(h):
    """Minimal polynomial of zeta_h + zeta_h^-1 over Q (h > 2)."""
    phi = _cyclotomic(h)
    half = phi.degree // 2
    out = IntPoly([phi.coeffs[half]])
    for j in range(1, half + 1):
        out = out + phi.coeffs[half + j] * _dickson_int(j)
    return out


def _dickson_eval(j, r, field):
    d0, d1 = field.elem(2), r
    if j == 0:
        return d0
    for _ in range(j - 1):
        d0, d1 = d1, r * d1 - d0
    return d1


def _embed(src, dst):
    """Field embedding F_{p^j} -> F_{p^k} sending the source generator to
    the least root of the source modulus; identity when fields match."""
    if src is dst:
        return lambda x: x
    if src.k == 1:
        return lambda x: dst.elem(x.rep[0] if x.rep else 0)
    mod = ffp_from_coeffs(dst, src.modulus)
    roots = ff_roots(mod, dst)
    assert roots, "no embedding: %r into %r" % (src, dst)
    r0 = roots[0]
    def phi(x):
        acc = dst.zero()
        for c in reversed(x.rep):
            acc = acc * r0 + dst.elem(c)
        return acc
    return phi


# ---------------------------------------------------------------------------
# representation tree

class GaloisRep:
    """Base node: ambient characteristic p and optional local data.

    local_data maps a prime q to the ramification filtration there, as a
    list of (subgroup order, fixed dimension) pairs, for constructions
    whose inertia action is supplied rather than derived.
    """

    def __init__(self, p, local_data=None):
        if not is_prime(p):
            raise ValueError("ambient characteristic must be prime")
        self.p = p
        self.local_data = dict(local_data) if local_data else {}

    @property
    def dim(self):
        raise NotImplementedError

    def field_degree(self):
        """Degree k of the canonical coefficient field F_{p^k}."""
        return 1

    def charpoly(self, l, field):
        raise NotImplementedError

    def frob_infinity(self):
        raise NotImplementedError

    def inertia_exponents(self):
        raise NotImplementedError

    def det_decomposition(self):
        raise NotImplementedError

    def ramified_primes(self):
        return set(self.local_data)

    def ramification_at(self, q):
        if q in self.local_data:
            return [(self.dim, list(self.local_data[q]))]
        return []


class Char(GaloisRep):
    """One-dimensional chi * omega^j."""

    def __init__(self, p, j, chi=None, local_data=None):
        GaloisRep.__init__(self, p, local_data)
        if chi is None:
            chi = trivial_char(finite_field(p))
        if chi.field.p != p:
            raise ValueError("character field has wrong characteristic")
        self.j = j % (p - 1)
        self.chi = chi
        # evaluation goes through the primitive character, so a prime
        # dividing the modulus but not the conductor still has a value
        self._prim = chi.restrict(chi.conductor)

    dim = property(lambda self: 1)

    def field_degree(self):
        return self.chi.field.k

    def charpoly(self, l, field):
        if l == self.p or self._prim.modulus % l == 0:
            raise ValueError("ramified prime %d" % l)
        emb = _embed(self.chi.field, field)
        v = emb(self._prim(l)) * field.elem(pow(l, self.j, self.p))
        return [field.one(), -v]

    def frob_infinity(self):
        s = self.chi.parity() * (-1) ** self.j
        return [("list", [s])]

    def inertia_exponents(self):
        return [self.j]

    def det_decomposition(self):
        return self.chi, self.j

    def ramified_primes(self):
        out = set(self.local_data)
        if self.chi.conductor > 1:
            out.update(q for q, _ in factorize(self.chi.conductor))
        return out

    def ramification_at(self, q):
        if q in self.local_data:
            return [(1, list(self.local_data[q]))]
        cond = self.chi.conductor
        if cond % q != 0:
            return []
        e = 0
        c = cond
        while c % q == 0:
            c //= q
            e += 1
        if e > 1:
            raise ValueError("wildly ramified character part at %d" % q)
        # tame: G_0 of order = order of the q-part, nothing fixed
        part = self.chi.restrict(self.chi.conductor)
        # order of the q-part divides q - 1; its exact value is the order
        # of chi on the subgroup congruent to 1 mod cond/q
        m = cond // q
        vals = {a: v for a, v in part._table.items() if a % m == 1 % m}
        o = 1
        one = self.chi.field.one()
        for v in vals.values():
            k = 1
            acc = v
            while acc != one:
                acc = acc * v
                k += 1
            o = o * k // gcd(o, k)
        return [(1, [(o, 0)])]

    def __repr__(self):
        return "Char(p=%d, j=%d, chi mod %d)" % (self.p, self.j, self.chi.modulus)


class Dihedral(GaloisRep):
    """Induced from a class group character of Q(sqrt(p)), index m."""

    def __init__(self, p, m, local_data=None):
        GaloisRep.__init__(self, p, local_data)
        if p % 4 != 1:
            raise ValueError("dihedral construction needs p = 1 mod 4")
        self.group = ClassGroup(p)
        h = self.group.h
        if h <= 1:
            raise ValueError("class number 1: no dihedral representation")
        if not 1 <= m <= (h - 1) // 2:
            raise ValueError("index m out of range 1..%d" % ((h - 1) // 2))
        self.m = m
        self.h = h
        self.gen_form = self.group.generator()
        # dlog table: class index -> exponent of the generator
        self._dlog = {}
        cur = self.group.reps[0]
        self._dlog[self.group.class_index(cur)] = 0
        cur = self.gen_form
        for e in range(1, h):
            self._dlog[self.group.class_index(cur)] = e
            cur = compose(cur, self.gen_form)
        # subfield degree: order of p in (Z/h)^* modulo +-1
        k = 1
        ph = p % h
        cur = ph
        while cur != 1 and cur != h - 1:
            cur = cur * ph % h
            k += 1
        self._k = k
        self.field = finite_field(p, k)
        psi = _cos_minpoly(h)
        roots = ff_roots(ffp_from_coeffs(self.field, psi.coeffs), self.field)
        assert roots, "cosine minimal polynomial has no root in the trace field"
        self.r0 = roots[0]

    dim = property(lambda self: 2)

    def field_degree(self):
        return self._k

    def trace_at(self, l):
        if l == self.p:
            raise ValueError("ramified prime %d" % l)
        if legendre(l, self.p) == -1:
            return self.field.zero()
        d = self._dlog[self.group.class_index(prime_form(self.p, l))]
        return _dickson_eval((self.m * d) % self.h, self.r0, self.field)

    def charpoly(self, l, field):
        emb = _embed(self.field, field)
        t = emb(self.trace_at(l))
        det = field.elem(legendre(l, self.p))
        return [field.one(), -t, det]

    def frob_infinity(self):
        return [("scalar", 1, 2)]

    def inertia_exponents(self):
        half = (self.p - 1) // 2
        return [half, 0]

    def det_decomposition(self):
        return trivial_char(finite_field(self.p)), (self.p - 1) // 2

    def __repr__(self):
        return "Dihedral(p=%d, m=%d, h=%d)" % (self.p, self.m, self.h)


class A4Hat(GaloisRep):
    """Two-dimensional representation through the double cover of A4.

    f is the quartic, s the square class datum cutting out the double
    cover, lift picks which of the two central lifts, realquad the sign
    of Frob_infinity.
    """

    def __init__(self, p, f, s, lift="e3", realquad=1, pk=None, local_data=None):
        GaloisRep.__init__(self, p, local_data)
        verify_a4hat_traces()
        if f.degree != 4 or f.lc != 1:
            raise ValueError("quartic data must be monic of degree 4")
        if lift not in ("e3", "e6"):
            raise ValueError("lift must be e3 or e6")
        if realquad not in (1, -1):
            raise ValueError("realquad must be +-1")
        self.f = f
        self.nf = NumberField(f, assume_irreducible=True)
        # s may be absent: weight and parity queries stand, Frobenius
        # lifts through the double cover do not
        self.s = self.nf.elem(s) if s is not None else None
        self.lift = lift
        self.realquad = realquad
        disc = poly_discriminant(f)
        odd = [q for q, _ in factorize(abs(disc)) if q != 2]
        if pk is None:
            # the quartic's own ramified prime; the discriminant is a
            # square, so look for the unique odd prime under it
            if len(odd) != 1:
                raise ValueError("quartic prime is ambiguous; pass pk")
            pk = odd[0]
        elif pk not in odd:
            raise ValueError("pk does not divide the quartic discriminant")
        self.pk = pk

    dim = property(lambda self: 2)

    def frob_class(self, l):
        if self.s is None:
            raise ValueError("no square class datum: lifts to the "
                             "double cover are undetermined")
        return a4_frob_class(self.f, self.s, l, nf=self.nf)

    def charpoly(self, l, field):
        if l == self.p:
            raise ValueError("ramified prime %d" % l)
        if poly_discriminant(self.f) % l == 0:
            raise ValueError("bad prime %d for the quartic" % l)
        t = field.elem(self.frob_class(l).trace)
        one = field.one()
        poly = [one, -t, one]
        if self.lift == "e6":
            # the other central lift is the omega^{(p-1)/2} twist
            u = field.elem(pow(l, (self.p - 1) // 2, self.p))
            poly = [poly[0], poly[1] * u, poly[2] * u * u]
        return poly

    def frob_infinity(self):
        s = self.realquad
        if self.lift == "e6":
            s = -s
        return [("scalar", s, 2)]

    def inertia_exponents(self):
        if self.p == self.pk:
            if (self.p - 1) % 3 != 0:
                raise ValueError("niveau > 1 unsupported")
            a = (self.p - 1) // 3
            exps = [a, (self.p - 1) - a]
        else:
            exps = [0, 0]
        if self.lift == "e6":
            half = (self.p - 1) // 2
            exps = [(e + half) % (self.p - 1) for e in exps]
        return exps

    def det_decomposition(self):
        # unimodular; the e6 twist contributes omega^{p-1} = 1
        return trivial_char(finite_field(self.p)), 0

    def ramified_primes(self):
        out = set(self.local_data)
        if self.pk != self.p:
            out.add(self.pk)
        return out

    def ramification_at(self, q):
        if q in self.local_data:
            return [(2, list(self.local_data[q]))]
        if q == self.pk != self.p:
            raise ValueError(
                "ramification data at %d must be supplied" % q)
        return []

    def __repr__(self):
        return "A4Hat(p=%d, quartic of %d, %s)" % (self.p, self.pk, self.lift)


class TameBlock(GaloisRep):
    """Exponent bookkeeping for a two-dimensional type carrying no
    Frobenius data: tame inertia at p acts through omega^d + omega^{-d}
    and Frob_infinity is the given scalar sign.  Enough for weight
    predictions over projective S4 or A5 fields, where the double cover
    is never computed."""

    def __init__(self, p, d, sign, local_data=None):
        GaloisRep.__init__(self, p, local_data)
        if not is_prime(p):
            raise ValueError("p must be prime")
        if sign not in (1, -1):
            raise ValueError("sign must be +-1")
        self.d = d % (p - 1)
        self.sign = sign

    dim = property(lambda self: 2)

    def charpoly(self, l, field):
        raise ValueError("no Frobenius data on a tame bookkeeping block")

    def frob_infinity(self):
        return [("scalar", self.sign, 2)]

    def inertia_exponents(self):
        return [self.d, (self.p - 1 - self.d) % (self.p - 1)]

    def det_decomposition(self):
        # unimodular by convention, like the lifts it stands in for
        return trivial_char(finite_field(self.p)), 0

    def __repr__(self):
        return "TameBlock(p=%d, d=%d, %+d)" % (self.p, self.d, self.sign)


class Twist(GaloisRep):
    """rep tensor omega^j."""

    def __init__(self, rep, j):
        GaloisRep.__init__(self, rep.p, None)
        self.rep = rep
        self.j = j % (rep.p - 1)

    dim = property(lambda self: self.rep.dim)

    def field_degree(self):
        return self.rep.field_degree()

    def charpoly(self, l, field):
        cs = self.rep.charpoly(l, field)
        u = field.elem(pow(l, self.j, self.p))
        out = []
        acc = field.one()
        for c in cs:
            out.append(c * acc)
            acc = acc * u
        return out

    def frob_infinity(self):
        blocks = self.rep.frob_infinity()
        if self.j % 2 == 0:
            return blocks
        out = []
        for b in blocks:
            if b[0] == "scalar":
                out.append(("scalar", -b[1], b[2]))
            else:
                out.append(("list", [-x for x in b[1]]))
        return out

    def inertia_exponents(self):
        n = self.p - 1
        return [(e + self.j) % n for e in self.rep.inertia_exponents()]

    def det_decomposition(self):
        eps, d = self.rep.det_decomposition()
        return eps, (d + self.j * self.rep.dim) % (self.p - 1)

    def ramified_primes(self):
        return self.rep.ramified_primes() | set(self.local_data)

    def ramification_at(self, q):
        return self.rep.ramification_at(q)

    def __repr__(self):
        return "Twist(%r, %d)" % (self.rep, self.j)


class DirectSum(GaloisRep):
    def __init__(self, parts):
        if not parts:
            raise ValueError("empty direct sum")
        p = parts[0].p
        if any(r.p != p for r in parts):
            raise ValueError("mixed characteristics in direct sum")
        GaloisRep.__init__(self, p, None)
        self.parts = list(parts)

    dim = property(lambda self: sum(r.dim for r in self.parts))

    def field_degree(self):
        k = 1
        for r in self.parts:
            j = r.field_degree()
            k = k * j // gcd(k, j)
        return k

    def charpoly(self, l, field):
        out = [field.one()]
        for r in self.parts:
            cs = r.charpoly(l, field)
            new = [field.zero()] * (len(out) + len(cs) - 1)
            for i, a in enumerate(out):
                for jj, b in enumerate(cs):
                    new[i + jj] = new[i + jj] + a * b
            out = new
        return out

    def frob_infinity(self):
        out = []
        for r in self.parts:
            out.extend(r.frob_infinity())
        return out

    def inertia_exponents(self):
        out = []
        for r in self.parts:
            out.extend(r.inertia_exponents())
        return out

    def det_decomposition(self):
        eps, d = self.parts[0].det_decomposition()
        for r in self.parts[1:]:
            e2, d2 = r.det_decomposition()
            eps = eps * e2
            d = (d + d2) % (self.p - 1)
        return eps, d

    def ramified_primes(self):
        out = set(self.local_data)
        for r in self.parts:
            out |= r.ramified_primes()
        return out

    def ramification_at(self, q):
        out = []
        for r in self.parts:
            out.extend(r.ramification_at(q))
        return out

    def __repr__(self):
        return "DirectSum(%r)" % (self.parts,)


class SymSquare(GaloisRep):
    """Symmetric square of a two-dimensional representation."""

    def __init__(self, rep):
        if rep.dim != 2:
            raise ValueError("symmetric square needs a 2-dimensional input")
        GaloisRep.__init__(self, rep.p, None)
        self.rep = rep

    dim = property(lambda self: 3)

    def field_degree(self):
        return self.rep.field_degree()

    def charpoly(self, l, field):
        one = field.one()
        cs = self.rep.charpoly(l, field)
        t, d = -cs[1], cs[2]
        e1 = t * t - d
        e2 = d * t * t - d * d
        e3 = d * d * d
        return [one, -e1, e2, -e3]

    def frob_infinity(self):
        blocks = self.rep.frob_infinity()
        eig = []
        for b in blocks:
            if b[0] == "scalar":
                eig.extend([b[1]] * b[2])
            else:
                eig.extend(b[1])
        a, b = eig
        return [("list", [a * a, a * b, b * b])]

    def inertia_exponents(self):
        n = self.p - 1
        u, v = self.rep.inertia_exponents()
        return [(2 * u) % n, (u + v) % n, (2 * v) % n]

    def det_decomposition(self):
        eps, d = self.rep.det_decomposition()
        return eps * eps * eps, (3 * d) % (self.p - 1)

    def ramified_primes(self):
        return self.rep.ramified_primes() | set(self.local_data)

    def ramification_at(self, q):
        if q in self.local_data:
            return [(3, list(self.local_data[q]))]
        if self.rep.ramification_at(q):
            raise ValueError(
                "ramification of a symmetric square at %d is unsupported" % q)
        return []

    def __repr__(self):
        return "SymSquare(%r)" % (self.rep,)


class Contragredient(GaloisRep):
    def __init__(self, rep):
        GaloisRep.__init__(self, rep.p, None)
        self.rep = rep

    dim = property(lambda self: self.rep.dim)

    def field_degree(self):
        return self.rep.field_degree()

    def charpoly(self, l, field):
        cs = self.rep.charpoly(l, field)
        lead = cs[-1]
        inv = lead.inverse()
        return [c * inv for c in reversed(cs)]

    def frob_infinity(self):
        # eigenvalues are +-1, self-reciprocal
        return self.rep.frob_infinity()

    def inertia_exponents(self):
        n = self.p - 1
        return [(-e) % n for e in self.rep.inertia_exponents()]

    def det_decomposition(self):
        eps, d = self.rep.det_decomposition()
        return eps.inverse(), (-d) % (self.p - 1)

    def ramified_primes(self):
        return self.rep.ramified_primes() | set(self.local_data)

    def ramification_at(self, q):
        return self.rep.ramification_at(q)

    def __repr__(self):
        return "Contragredient(%r)" % (self.rep,)


# ---------------------------------------------------------------------------
# module-level query API

def rep_field(rep):
    """The canonical coefficient field F_{p^k} for rep's Frobenius data."""
    return finite_field(rep.p, rep.field_degree())


def frob_charpoly(rep, l, field=None):
    """det(I - rho(Frob_l) X) as coefficient list, constant term first."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    if field is None:
        field = rep_field(rep)
    if l == rep.p or l in rep.ramified_primes():
        raise ValueError("ramified prime %d" % l)
    cs = rep.charpoly(l, field)
    assert cs[0] == field.one()
    assert len(cs) == rep.dim + 1
    return cs


def frob_infinity(rep):
    """Blocks of rho(Frob_infinity): ('scalar', sign, dim) or ('list', eigs)."""
    return rep.frob_infinity()


def frob_infinity_eigenvalues(rep):
    out = []
    for b in rep.frob_infinity():
        if b[0] == "scalar":
            out.extend([b[1]] * b[2])
        else:
            out.extend(b[1])
    return out


def inertia_exponents(rep):
    """Tame inertia exponents at p, mod p - 1, in block order."""
    return [e % (rep.p - 1) for e in rep.inertia_exponents()]


def det_decomposition(rep):
    """det rho = eps * omega^d with eps prime to p; returns (eps, d)."""
    eps, d = rep.det_decomposition()
    return eps, d % (rep.p - 1)


def ramification_data(rep, q):
    """Filtration data at q != p: list of (block dim, [(order, fixed_dim)])."""
    if q == rep.p:
        raise ValueError("q must differ from the ambient characteristic")
    return rep.ramification_at(q)


# ---------------------------------------------------------------------------
# representation spec files

def _node_local_data(obj):
    raw = obj.get("local_data")
    if raw is None:
        return None
    out = {}
    for q, rows in raw.items():
        out[int(q)] = [(int(o), int(fd)) for o, fd in rows]
    return out


def _build_node(obj, p, basedir):
    kind = obj.get("type")
    if kind == "char":
        k = int(obj.get("k", 1))
        field = finite_field(p, k)
        chi = None
        if "modulus" in obj:
            vals = [field.elem(v) for v in obj.get("values", [])]
            chi = DirichletChar(int(obj["modulus"]), field, vals)
        return Char(p, int(obj.get("j", 0)), chi=chi,
                    local_data=_node_local_data(obj))
    if kind == "dihedral":
        return Dihedral(p, int(obj["m"]), local_data=_node_local_data(obj))
    if kind == "a4hat":
        # the quartic datafile supplies f and g; s and the real/complex
        # sign come out of the analysis pipeline
        from .a4pipeline import compute_s, decide_real_or_complex, load_quartic
        import os
        ds = load_quartic(os.path.join(basedir, obj["quartic"]))
        s = list(compute_s(ds).coords) if ds.gexpr is not None else None
        if "realquad" in obj:
            realquad = int(obj["realquad"])
        else:
            realquad = 1 if decide_real_or_complex(ds).verdict == "+" else -1
        return A4Hat(p, ds.f, s, lift=obj.get("lift", "e3"),
                     realquad=realquad, pk=ds.p if ds.p != p else None,
                     local_data=_node_local_data(obj))
    if kind == "twist":
        return Twist(_build_node(obj["rep"], p, basedir), int(obj["j"]))
    if kind == "dsum":
        return DirectSum([_build_node(o, p, basedir)
                          for o in obj["parts"]])
    if kind == "symsq":
        return SymSquare(_build_node(obj["rep"], p, basedir))
    if kind == "contragredient":
        return Contragredient(_build_node(obj["rep"], p, basedir))
    raise ValueError("unknown representation type %r" % kind)


def load_rep(path):
    """Build a representation tree from a JSON spec file.

    The top level object carries the ambient characteristic p next to
    the root node fields; a4hat nodes name their quartic datafile
    relative to the spec file's directory.
    """
    import json
    import os
    with open(path) as fh:
        data = json.load(fh)
    if "p" not in data:
        raise ValueError("spec file needs the ambient characteristic p")
    p = int(data["p"])
    return _build_node(data, p, os.path.dirname(os.path.abspath(path)))
