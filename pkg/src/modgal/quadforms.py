"""Class groups of real quadratic fields via binary quadratic forms.

Forms (A, B, C) of positive non-square discriminant D = B^2 - 4AC are
reduced and sorted into cycles; the number of cycles is the class number.
Discriminants here are primes p = 1 mod 4, where the class number is odd
and the narrow and wide class groups agree, so no genus bookkeeping is
needed.  Composition is classical Gaussian composition through concordant
representatives, and equivalence is tested by comparing full cycles.
"""

from math import isqrt, gcd

from .finitefield import is_prime


class QuadForm:
    """Integral binary quadratic form A x^2 + B xy + C y^2."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        d = b * b - 4 * a * c
        if d <= 0:
            raise ValueError("discriminant must be positive")
        r = isqrt(d)
        if r * r == d:
            raise ValueError("discriminant must not be a square")
        self.a = a
        self.b = b
        self.c = c

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def tuple(self):
        return (self.a, self.b, self.c)

    def __eq__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.tuple() == other.tuple()

    def __hash__(self):
        return hash(self.tuple())

    def __repr__(self):
        return "QuadForm(%d, %d, %d)" % (self.a, self.b, self.c)

    def is_primitive(self):
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self):
        """0 < B < sqrt(D) and sqrt(D) - B < 2|A| < sqrt(D) + B, exactly."""
        d = self.disc
        b = self.b
        if b <= 0 or b * b >= d:
            return False
        t = 2 * abs(self.a)
        # sqrt(d) - b < t  <=>  d < (t + b)^2
        if d >= (t + b) * (t + b):
            return False
        # t < sqrt(d) + b  <=>  t - b < 0 or (t - b)^2 < d
        return t < b or (t - b) * (t - b) < d


def _rho(form):
    """One reduction step, sign-normalized so the outcome has A > 0."""
    d = form.disc
    a2 = abs(form.c)
    # B' = -B mod 2|C|, shifted into the window for the new leading term
    m = 2 * a2
    bp = (-form.b) % m
    rd = isqrt(d)
    if a2 > rd:
        # -|C| < B' <= |C|
        if bp > a2:
            bp -= m
    else:
        # sqrt(D) - 2|C| < B' < sqrt(D): largest residue below sqrt(D)
        bp += ((rd - bp) // m) * m
    cp = (bp * bp - d) // (4 * a2)
    assert (bp * bp - d) % (4 * a2) == 0
    return QuadForm(a2, bp, cp)


def reduce_form(form):
    f = form
    if f.a < 0:
        f = QuadForm(-f.a, f.b, -f.c)
    while not f.is_reduced():
        f = _rho(f)
    return f


def reduce_cycle(form):
    """The full cycle of reduced forms equivalent to the given one."""
    f0 = reduce_form(form)
    cyc = [f0]
    f = _rho(f0)
    while f != f0:
        cyc.append(f)
        f = _rho(f)
    return cyc


def _reduced_forms(d):
    """All reduced forms of discriminant d with positive leading term."""
    out = []
    rd = isqrt(d)
    for b in range(1, rd + 1, 2):
        m4 = d - b * b
        # d = 1 mod 4 and b odd force divisibility by 4
        m = m4 // 4
        a = 1
        while a * a <= m:
            if m % a == 0:
                for aa in (a, m // a):
                    t = 2 * aa
                    if d < (t + b) * (t + b) and (t < b or (t - b) * (t - b) < d):
                        out.append(QuadForm(aa, b, -(m // aa)))
            a += 1
    # divisor pairs can coincide when m is a square; dedupe
    return sorted(set(out), key=QuadForm.tuple)


class ClassGroup:
    """Form class group of a prime discriminant p = 1 mod 4.

    reps holds one reduced form per class, the principal class first and
    the rest in lexicographic order; cycles is the matching partition of
    all reduced forms.
    """

    def __init__(self, d):
        if d <= 0 or d % 4 != 1:
            raise ValueError("discriminant must be positive and 1 mod 4")
        if not is_prime(d):
            raise ValueError("only prime discriminants are supported")
        self.D = d
        forms = _reduced_forms(d)
        seen = set()
        cycles = []
        for f in forms:
            if f in seen:
                continue
            cyc = reduce_cycle(f)
            seen.update(cyc)
            cycles.append(cyc)
        assert seen == set(forms)

        def key(cyc):
            # principal cycle (the one with a leading coefficient 1) first
            has_one = any(f.a == 1 for f in cyc)
            return (not has_one, min(f.tuple() for f in cyc))

        cycles.sort(key=key)
        self.cycles = cycles
        self.h = len(cycles)
        self.reps = [min(c, key=QuadForm.tuple) for c in cycles]

    def class_index(self, form):
        """Index into reps of the class of an arbitrary form of disc D."""
        f0 = reduce_form(form)
        for i, cyc in enumerate(self.cycles):
            if f0 in cyc:
                return i
        raise ValueError("form does not belong to this discriminant")

    def is_principal(self, form):
        return self.class_index(form) == 0

    def generator(self):
        """Least non-principal reduced form whose class has full order h.

        Raises ValueError when the group is not cyclic.  For h = 1 the
        principal form itself is returned.
        """
        if self.h == 1:
            return self.reps[0]
        for f in _reduced_forms(self.D):
            if self.is_principal(f):
                continue
            if class_order(self, f) == self.h:
                return f
        raise ValueError("class group is not cyclic")


def class_group(d):
    return ClassGroup(d)


def _primitive_rep_coprime_to(form, n):
    """A form properly equivalent to `form` whose leading term is odd,
    coprime to n; returned as a new QuadForm."""
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                m = form(x, y)
                if m != 0 and gcd(m, 2 * n) == 1:
                    # complete to the determinant-1 matrix with columns
                    # (x, y) and (-v, u), where u*x + v*y = 1
                    g, u, v = _bezout(x, y)
                    assert g == 1
                    bb = (2 * (-form.a * x * v + form.c * y * u)
                          + form.b * (x * u - v * y))
                    cc = form(-v, u)
                    out = QuadForm(m, bb, cc)
                    assert out.disc == form.disc
                    return out
        bound += 1


def _bezout(x, y):
    if x == 0 and y == 0:
        return 0, 0, 0
    a, b = abs(x), abs(y)
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x < 0:
        s0 = -s0
    if y < 0:
        t0 = -t0
    return r0, s0, t0


def compose(f1, f2):
    """Gaussian composition of two primitive forms of equal discriminant."""
    d = f1.disc
    if f2.disc != d:
        raise ValueError("forms have different discriminants")
    if not (f1.is_primitive() and f2.is_primitive()):
        raise ValueError("composition needs primitive forms")
    g2 = _primitive_rep_coprime_to(f2, f1.a)
    a1, b1 = f1.a, f1.b
    a2, b2 = g2.a, g2.b
    # l = b1 mod 2a1 and l = b2 mod 2a2; the moduli share only the factor
    # 2 and both b are odd, so CRT applies: l = b1 + 2*a1*k
    t = (b2 - b1) // 2
    k = (t * _inv_mod(a1, a2)) % a2
    l = b1 + 2 * a1 * k
    a3 = a1 * a2
    assert (l * l - d) % (4 * a3) == 0
    return QuadForm(a3, l, (l * l - d) // (4 * a3))


def _inv_mod(a, n):
    g, u, _v = _bezout(a, n)
    assert g == 1
    return u % n


def is_equivalent(f1, f2):
    if f1.disc != f2.disc:
        return False
    return reduce_form(f2) in reduce_cycle(f1)


def class_order(group, form):
    """Multiplicative order of the class of form in the class group."""
    if group.is_principal(form):
        return 1
    cur = form
    k = 1
    while k <= group.h:
        cur = compose(cur, form)
        k += 1
        if group.is_principal(cur):
            return k
    raise AssertionError("order exceeds group size")


def prime_class_order(d, l, group=None):
    """Order of the class of a form (l, B, C) of discriminant d.

    l must be an odd prime not dividing d that splits in Q(sqrt(d));
    inert or ramified primes raise ValueError.
    """
    if group is None:
        group = ClassGroup(d)
    form = prime_form(d, l)
    return class_order(group, form)


def prime_form(d, l):
    """The form (l, B, C) of discriminant d with least positive odd B."""
    if d % l == 0:
        raise ValueError("prime divides the discriminant")
    for b in range(1, 2 * l, 2):
        if (b * b - d) % (4 * l) == 0:
            return QuadForm(l, b, (b * b - d) // (4 * l))
    raise ValueError("inert")


def dlog_in_cyclic(d, form, generator):
    """Exponent e with generator^e equivalent to form; the group must be
    cyclic with the given generator of full order."""
    group = ClassGroup(d)
    if class_order(group, generator) != group.h:
        raise ValueError("not a generator of a cyclic class group")
    if group.is_principal(form):
        return 0
    cur = generator
    for e in range(1, group.h):
        if group.class_index(cur) == group.class_index(form):
            return e
        cur = compose(cur, generator)
    raise ValueError("form not generated; class group is not cyclic")
