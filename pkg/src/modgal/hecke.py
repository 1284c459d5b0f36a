"""Eigenvalue side: stored Hecke data, the polynomial it induces at each
prime, and the comparison against a representation's Frobenius data.

The coefficient identity in force everywhere here is

    sum_k (-1)^k l^(k(k-1)/2) a(l,k) X^k  =  det(I - rho(Frob_l) X)

with a(l,0) = 1 and a(l,n) pinned to eps(l) * l^g by the action of the
scalar matrix.
"""

from math import gcd

from .finitefield import finite_field, is_prime
from .galrep import (DirichletChar, _embed, det_decomposition, frob_charpoly,
                     rep_field, trivial_char)


def _lift_char(eps, field):
    """The same character with values embedded in a larger canonical field."""
    if eps.field is field:
        return eps
    emb = _embed(eps.field, field)
    return DirichletChar(eps.modulus, field, [emb(v) for v in eps.gen_values])


class EigenSystem:
    """Hecke eigenvalues at one (p, N, n, g).

    table maps a prime l to the tuple (a(l,1), ..., a(l,n-1)) of
    elements of one canonical F_{p^k}; the endpoints a(l,0) and a(l,n)
    are derived, not stored.
    """

    __slots__ = ("p", "N", "n", "g", "eps", "field", "table")

    def __init__(self, p, N, g, table, eps=None, n=3):
        if not is_prime(p):
            raise ValueError("p must be prime")
        if N < 1 or N % p == 0:
            raise ValueError("bad level %d" % N)
        if n < 1:
            raise ValueError("bad dimension %d" % n)
        g = getattr(g, "g", g)
        if g < 0:
            raise ValueError("negative weight degree")
        self.p = p
        self.N = N
        self.n = n
        self.g = g
        field = None
        if eps is not None:
            field = eps.field
        for vals in table.values():
            for v in vals:
                field = v.field
                break
            break
        if field is None:
            field = finite_field(p)
        if field.p != p:
            raise ValueError("value field has characteristic %d" % field.p)
        if eps is None:
            eps = trivial_char(field)
        if eps.field is not field:
            raise ValueError("eps and table live in different fields")
        self.eps = eps
        self.field = field
        self.table = {}
        for l, vals in table.items():
            if not is_prime(l) or gcd(l, p * N) != 1:
                raise ValueError("l = %d is not a prime avoiding pN" % l)
            vals = tuple(vals)
            if len(vals) != n - 1:
                raise ValueError("need %d eigenvalues at l = %d" % (n - 1, l))
            if any(v.field is not field for v in vals):
                raise ValueError("mixed value fields at l = %d" % l)
            if n > 1:
                # for n = 1 every a(l, k) is derived; nothing to store
                self.table[l] = vals
            if self.a(l, n).is_zero():
                raise ValueError("a(%d, %d) vanishes" % (l, n))

    def a(self, l, k):
        """The eigenvalue a(l, k), endpoints included."""
        if not 0 <= k <= self.n:
            raise ValueError("k out of range")
        if k == 0:
            return self.field.one()
        if k == self.n:
            return self.eps(l) * self.field.elem(pow(l, self.g, self.p))
        return self.table[l][k - 1]

    def primes(self):
        return sorted(self.table)

    def __eq__(self, other):
        if not isinstance(other, EigenSystem):
            return NotImplemented
        return (self.p == other.p and self.N == other.N and self.n == other.n
                and self.g % (self.p - 1) == other.g % (other.p - 1)
                and self.eps == other.eps and self.table == other.table)

    def __repr__(self):
        return ("EigenSystem(p=%d, N=%d, n=%d, g=%d, %d primes)" %
                (self.p, self.N, self.n, self.g, len(self.table)))


def hecke_polynomial(es, l):
    """Coefficient list (constant term first) of the degree-n polynomial
    the stored eigenvalues induce at l."""
    if gcd(l, es.p * es.N) != 1:
        raise ValueError("l = %d shares a factor with pN" % l)
    if es.n > 1 and l not in es.table:
        raise KeyError("no eigenvalues stored for l = %d" % l)
    out = []
    for k in range(es.n + 1):
        c = es.a(l, k) * es.field.elem(pow(l, k * (k - 1) // 2, es.p))
        out.append(-c if k % 2 else c)
    return out


def eigensystem_from_rep(rep, l_set, N=1):
    """Solve the coefficient identity for the eigenvalues of rep.

    The weight degree is forced by the determinant: g = d - n(n-1)/2
    mod p - 1, where det rho = eps * omega^d.
    """
    n = rep.dim
    p = rep.p
    field = rep_field(rep)
    eps, d = det_decomposition(rep)
    eps = _lift_char(eps.restrict(eps.conductor), field)
    g = (d - n * (n - 1) // 2) % (p - 1)
    table = {}
    for l in sorted(set(l_set)):
        cs = frob_charpoly(rep, l)
        linv = field.elem(l).inverse()
        row = []
        for k in range(1, n):
            a = cs[k] * linv ** (k * (k - 1) // 2)
            row.append(-a if k % 2 else a)
        table[l] = tuple(row)
    return EigenSystem(p, N, g, table, eps=eps, n=n)


class AttachmentReport:
    """Per-prime comparison rows (l, hecke coefficients, charpoly
    coefficients, match flag); the verdict is their conjunction."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = list(rows)

    @property
    def verdict(self):
        return all(m for _, _, _, m in self.rows)

    def format_table(self):
        head = ("l", "hecke", "charpoly", "MATCH?")
        body = [(str(l), _fmt_poly(h), _fmt_poly(c),
                 "MATCH" if m else "MISMATCH") for l, h, c, m in self.rows]
        widths = [max(len(r[i]) for r in body + [head]) for i in range(4)]
        lines = []
        for r in [head] + body:
            lines.append(" | ".join(c.ljust(w) for c, w in
                                    zip(r, widths)).rstrip())
        return "\n".join(lines)

    def __repr__(self):
        ok = sum(1 for _, _, _, m in self.rows if m)
        return "AttachmentReport(%d/%d match)" % (ok, len(self.rows))


def _fmt_elem(x):
    return ",".join(str(c) for c in x.rep) if x.rep else "0"


def _fmt_poly(cs):
    return "[" + " ".join(_fmt_elem(c) for c in cs) + "]"


def check_attachment(rep, es, l_set):
    """Compare the eigenvalue polynomial with det(I - rho(Frob_l)X) at
    each l, in the smallest common canonical field."""
    if rep.p != es.p:
        raise ValueError("characteristics differ: %d vs %d" % (rep.p, es.p))
    if rep.dim != es.n:
        raise ValueError("dimensions differ: %d vs %d" % (rep.dim, es.n))
    kr = rep_field(rep).k
    ke = es.field.k
    K = finite_field(es.p, kr * ke // gcd(kr, ke))
    emb = _embed(es.field, K)
    rows = []
    for l in sorted(set(l_set)):
        h = [emb(c) for c in hecke_polynomial(es, l)]
        c = frob_charpoly(rep, l, field=K)
        rows.append((l, h, c, h == c))
    return AttachmentReport(rows)


def dual_eigensystem(es):
    """The eigensystem whose polynomial at every l has the reciprocal
    root multiset: reverse the coefficients, renormalize, re-extract."""
    n = es.n
    p = es.p
    field = es.field
    gd = (-es.g - n * (n - 1)) % (p - 1)
    table = {}
    for l in es.primes():
        cs = hecke_polynomial(es, l)
        lead = cs[n].inverse()
        rev = [cs[n - k] * lead for k in range(n + 1)]
        linv = field.elem(l).inverse()
        row = []
        for k in range(1, n):
            a = rev[k] * linv ** (k * (k - 1) // 2)
            row.append(-a if k % 2 else a)
        table[l] = tuple(row)
    return EigenSystem(p, es.N, gd, table, eps=es.eps.inverse(), n=n)


# ---------------------------------------------------------------------------
# datafile format: header "p N n g", optional "eps" line, body "l k value";
# an element of F_{p^k} is written as its k coefficients against the
# canonical modulus, low degree first, comma-separated

def _parse_elem(tok, field):
    digits = [int(t) for t in tok.split(",")]
    if len(digits) != field.k:
        raise ValueError("value %r has %d digits, field degree is %d" %
                         (tok, len(digits), field.k))
    return field.elem(digits)


def load_eigensystem(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty eigenvalue file")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError("header must be: p N n g")
    p, N, n, g = (int(t) for t in head)
    eps_line = None
    body = []
    for ln in lines[1:]:
        if ln.startswith("eps"):
            if eps_line is not None:
                raise ValueError("duplicate eps line")
            eps_line = ln.split()[1:]
        else:
            body.append(ln.split())
    digit_counts = {len(t[2].split(",")) for t in body}
    if eps_line:
        digit_counts |= {len(t.split(",")) for t in eps_line[1:]}
    if len(digit_counts) > 1:
        raise ValueError("inconsistent value widths in file")
    k = digit_counts.pop() if digit_counts else 1
    field = finite_field(p, k)
    eps = None
    if eps_line:
        eps = DirichletChar(int(eps_line[0]), field,
                            [_parse_elem(t, field) for t in eps_line[1:]])
    table = {}
    for t in body:
        if len(t) != 3:
            raise ValueError("body line must be: l k value")
        l, kk, tok = int(t[0]), int(t[1]), t[2]
        if not 1 <= kk <= n - 1:
            raise ValueError("k = %d out of range at l = %d" % (kk, l))
        table.setdefault(l, [None] * (n - 1))[kk - 1] = _parse_elem(tok, field)
    for l, vals in table.items():
        if any(v is None for v in vals):
            raise ValueError("incomplete eigenvalue row at l = %d" % l)
    return EigenSystem(p, N, g, {l: tuple(v) for l, v in table.items()},
                       eps=eps, n=n)


def save_eigensystem(es, path):
    with open(path, "w") as fh:
        fh.write("%d %d %d %d\n" % (es.p, es.N, es.n, es.g))
        if not es.eps.is_trivial():
            vals = " ".join(_fmt_elem(v) for v in es.eps.gen_values)
            fh.write("eps %d %s\n" % (es.eps.modulus, vals))
        for l in es.primes():
            for k in range(1, es.n):
                fh.write("%d %d %s\n" % (l, k, _fmt_elem(es.a(l, k))))
