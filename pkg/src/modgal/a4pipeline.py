"""The quartic analysis pipeline: validate a dataset, compute the
distinguished element s by relative norm and content removal, and decide
whether the double cover of the quartic field is totally real.

The verdict is +, meaning totally real, exactly when the generator
picked by the ramification test above 2 (s itself when F(sqrt(s))/F is
unramified there, -s otherwise) is totally positive.
"""

from fractions import Fraction
from math import isqrt

from .finitefield import is_prime
from .intpoly import IntPoly, poly_discriminant, real_root_count
from .numfield import (NumberField, content_removed, galois_group_is_A4,
                       nf_norm, nf_trace, parse_gexpr, rel_norm,
                       totally_positive)
from .twoadic import build_two_adic_context, two_adic_unramified


class A4Dataset:
    """One quartic record: the prime, the defining polynomial, the g
    expression feeding the relative norm, and an optional basis for a
    2-maximal order when the power basis is known to fall short."""

    __slots__ = ("p", "f", "gexpr", "basis2")

    def __init__(self, p, f, gexpr=None, basis2=None):
        if not is_prime(p):
            raise ValueError("p must be prime")
        if not isinstance(f, IntPoly):
            f = IntPoly(f)
        self.p = p
        self.f = f
        self.gexpr = gexpr
        self.basis2 = basis2

    def __repr__(self):
        return "A4Dataset(p=%d, f=%s)" % (self.p, self.f)


class QuarticInvalid(ValueError):
    """Raised when a dataset fails validation; carries the checklist."""

    def __init__(self, checklist):
        self.checklist = checklist
        bad = ", ".join(name for name, ok, _ in checklist.rows if not ok)
        ValueError.__init__(self, "quartic dataset fails: %s" % bad)


class QuarticChecklist:
    """Validation outcomes as (name, ok, note) rows."""

    __slots__ = ("rows", "index_candidate")

    def __init__(self, rows, index_candidate):
        self.rows = rows
        self.index_candidate = index_candidate

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.rows)

    def format_lines(self):
        out = []
        for name, ok, note in self.rows:
            line = "%s %s" % ("pass" if ok else "FAIL", name)
            if note:
                line += " (%s)" % note
            out.append(line)
        return out


def validate_quartic(ds):
    """Check the dataset invariants and report each one.

    The discriminant test is a proxy: disc(f) must be p^2 times a
    perfect square, whose root is the index candidate [O_F : Z[a]].
    """
    rows = []
    f = ds.f
    try:
        a4 = galois_group_is_A4(f)
        rows.append(("galois group A4", a4, ""))
    except ValueError as e:
        rows.append(("galois group A4", False, str(e)))
        a4 = False
    nreal = real_root_count(f)
    rows.append(("four real roots", nreal == 4, "found %d" % nreal))
    idx = None
    disc = poly_discriminant(f)
    pp = ds.p * ds.p
    if disc > 0 and disc % pp == 0:
        r = isqrt(disc // pp)
        if r * r == disc // pp:
            idx = r
    # proxy for field discriminant p^2: exact when the index candidate
    # accounts for the whole square part, flagged in the notes otherwise
    rows.append(("disc(f) = p^2 * square", idx is not None,
                 "index candidate %d" % idx if idx is not None else
                 "disc %d" % disc))
    return QuarticChecklist(rows, idx)


def compute_s(ds):
    """The element s: relative norm of g with all integer content removed.

    The removal also strips every factor of 2 that keeps s integral, so
    the result is never divisible by 2 in the ring of integers.
    """
    if ds.gexpr is None:
        raise ValueError("gexpr required")
    F = NumberField(ds.f)
    r = rel_norm(ds.gexpr, F)
    if r.is_zero():
        raise ValueError("relative norm of g vanishes")
    s, _ = content_removed(r)
    return s


class A4Report:
    """Everything the verdict rests on, plus the verdict."""

    __slots__ = ("p", "s", "norm_s", "trace_s", "p_coprime",
                 "two_unramified", "verdict", "index_notes")

    def __init__(self, p, s, norm_s, trace_s, p_coprime, two_unramified,
                 verdict, index_notes):
        self.p = p
        self.s = s
        self.norm_s = norm_s
        self.trace_s = trace_s
        self.p_coprime = p_coprime
        self.two_unramified = two_unramified
        self.verdict = verdict
        self.index_notes = index_notes

    def format_lines(self):
        out = ["p %d verdict %s" % (self.p, self.verdict)]
        out.append("s %s" % _fmt_coords(self.s))
        out.append("norm %d trace %d" % (self.norm_s, self.trace_s))
        out.append("unramified above 2: %s"
                   % ("yes" if self.two_unramified else "no"))
        for note in self.index_notes:
            out.append(note)
        return out


def _fmt_coords(x):
    # print as a polynomial in a, constant term first
    parts = []
    for i, c in enumerate(x.coords):
        c = Fraction(c)
        if c == 0:
            continue
        mon = "" if i == 0 else ("a" if i == 1 else "a^%d" % i)
        cs = str(c.numerator if c.denominator == 1 else c)
        if mon and cs == "1":
            cs = ""
        elif mon and cs == "-1":
            cs = "-"
        parts.append(cs + mon if mon else cs)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def decide_real_or_complex(ds):
    """Run the full pipeline on one dataset and return the report.

    Raises QuarticInvalid when validation fails, ValueError when s is
    not coprime to p, and UndeterminedAtTwo when the order enlargement
    cannot certify 2-maximality.
    """
    chk = validate_quartic(ds)
    if not chk.ok:
        raise QuarticInvalid(chk)
    s = compute_s(ds)
    norm = Fraction(nf_norm(s))
    trace = Fraction(nf_trace(s))
    assert norm.denominator == 1 and trace.denominator == 1
    norm = norm.numerator
    trace = trace.numerator
    if norm % ds.p == 0:
        raise ValueError("s not coprime to p - pipeline assumption violated")
    F = s.field
    ctx = build_two_adic_context(F, basis2=ds.basis2)
    unram = two_adic_unramified(s, ctx)
    t = s if unram else -s
    if totally_positive(t):
        verdict = "+"
    elif totally_positive(-t):
        verdict = "-"
    else:
        raise ValueError("mixed signature: neither of +-t is totally "
                         "positive")
    notes = []
    if chk.index_candidate is not None and chk.index_candidate > 1:
        notes.append("index candidate %d" % chk.index_candidate)
    notes.append("primes above 2: residue degrees %s"
                 % ",".join(str(d) for d, _ in ctx.primes2))
    return A4Report(ds.p, s, norm, trace, norm % ds.p != 0, unram,
                    verdict, notes)


# ---------------------------------------------------------------------------
# datafile

def load_quartic(path):
    """Read a quartic datafile.

    Lines: `p <prime>`, `f <coeffs low-first>`, optional `g <expr>`,
    optional repeated `basis2 <n rationals>`.  Blank lines and lines
    starting with # are skipped.
    """
    p = f = gexpr = None
    basis2 = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            rest = rest.strip()
            if key == "p":
                p = int(rest)
            elif key == "f":
                f = IntPoly([int(t) for t in rest.split()])
            elif key == "g":
                gexpr = parse_gexpr(rest)
            elif key == "basis2":
                basis2.append([Fraction(t) for t in rest.split()])
            else:
                raise ValueError("unrecognized line %r" % line)
    if p is None or f is None:
        raise ValueError("datafile needs p and f lines")
    if basis2 and len(basis2) != f.degree:
        raise ValueError("basis2 needs %d rows" % f.degree)
    return A4Dataset(p, f, gexpr=gexpr, basis2=basis2 or None)
