"""Prediction side: reduced weight tuples, conductors, nebentypes, and
the arrangement search at the infinite place.

Everything here is exact integer bookkeeping on top of the block data a
representation exposes: eigenvalues at Frob_infinity, tame exponents at
p, and filtration data away from p.
"""

from fractions import Fraction
from itertools import combinations, permutations, product

from .galrep import (Char, DirectSum, Twist, det_decomposition,
                     frob_infinity, frob_infinity_eigenvalues,
                     inertia_exponents, ramification_data)


class GoodTuple:
    """Weakly decreasing exponent tuple with gaps in [0, p-1] and last
    entry in [0, p-2].  These parametrize the irreducible mod-p modules
    of the general linear group."""

    __slots__ = ("b", "p")

    def __init__(self, b, p):
        b = tuple(int(x) for x in b)
        if not b:
            raise ValueError("empty tuple")
        for i in range(len(b) - 1):
            if not 0 <= b[i] - b[i + 1] <= p - 1:
                raise ValueError("gap %d out of range at index %d" %
                                 (b[i] - b[i + 1], i))
        if not 0 <= b[-1] <= p - 2:
            raise ValueError("last entry %d out of range" % b[-1])
        self.b = b
        self.p = p

    @property
    def g(self):
        """Degree of the symmetric power the module embeds into:
        b1 + b2*p + ... + bn*p^(n-1)."""
        acc = 0
        for c in reversed(self.b):
            acc = acc * self.p + c
        return acc

    def __len__(self):
        return len(self.b)

    def __iter__(self):
        return iter(self.b)

    def __eq__(self, other):
        if not isinstance(other, GoodTuple):
            return NotImplemented
        return self.b == other.b and self.p == other.p

    def __hash__(self):
        return hash((self.b, self.p))

    def __repr__(self):
        return "GoodTuple(%s, p=%d)" % (list(self.b), self.p)


def good_normalize(a, p):
    """All good tuples congruent to a componentwise mod p - 1.

    Built from the right: the last entry has a unique representative in
    [0, p-2], and each gap is forced unless the difference vanishes mod
    p - 1, where it may be 0 or p - 1.  Sorted by embedding degree, so
    the result is a singleton exactly when no gap is ambiguous.
    """
    if p < 3:
        raise ValueError("p must be an odd prime")
    a = [int(x) for x in a]
    if not a:
        raise ValueError("empty tuple")
    tails = [(a[-1] % (p - 1),)]
    for i in range(len(a) - 2, -1, -1):
        d = (a[i] - a[i + 1]) % (p - 1)
        gaps = (0, p - 1) if d == 0 else (d,)
        tails = [(t[0] + gap,) + t for t in tails for gap in gaps]
    out = [GoodTuple(t, p) for t in tails]
    out.sort(key=lambda t: t.g)
    return out


def twist_weight(tuples, eps=None):
    """Image of a good-tuple set under one more determinant twist.

    Each tuple shifts up by one, wrapping down by p - 2 when the last
    entry is already at its ceiling; the attached character is
    unchanged and only rides along in the signature.
    """
    out = []
    for t in tuples:
        if not isinstance(t, GoodTuple):
            raise TypeError("expected GoodTuple, got %r" % (t,))
        if t.b[-1] < t.p - 2:
            nb = tuple(x + 1 for x in t.b)
        else:
            nb = tuple(x - t.p + 2 for x in t.b)
        nt = GoodTuple(nb, t.p)
        if nt not in out:
            out.append(nt)
    out.sort(key=lambda t: t.g)
    return out


# ---------------------------------------------------------------------------
# parity at the infinite place

def _partitions(positions, sizes):
    # ordered assignment of position sets to blocks of the given sizes
    if not sizes:
        yield ()
        return
    for head in combinations(positions, sizes[0]):
        rest = tuple(x for x in positions if x not in head)
        for tail in _partitions(rest, sizes[1:]):
            yield (head,) + tail


def _block_dims(blocks):
    return [b[2] if b[0] == "scalar" else len(b[1]) for b in blocks]


def _needed(sign, positions):
    # alternating signs read off the ambient diagonal
    return [sign if q % 2 == 1 else -sign for q in positions]


def _block_mismatch(block, positions, sign):
    need = _needed(sign, positions)
    if block[0] == "scalar":
        if any(v != block[1] for v in need):
            return ("scalar %+d block on positions %s needs %s" %
                    (block[1], list(positions), need))
    else:
        if sorted(block[1]) != sorted(need):
            return ("block eigenvalues %s on positions %s need %s" %
                    (sorted(block[1]), list(positions), need))
    return None


class ParityReport:
    """Outcome of the arrangement search at Frob_infinity.

    items is a list of (arrangement, accepted signs, reason); an
    arrangement is one position tuple per block, and it is accepted
    when the sign tuple is nonempty.
    """

    __slots__ = ("global_ok", "items")

    def __init__(self, global_ok, items):
        self.global_ok = global_ok
        self.items = items

    def accepted(self):
        return [arr for arr, signs, _ in self.items if signs]

    def __repr__(self):
        n = len(self.accepted())
        return ("ParityReport(global_ok=%s, %d/%d accepted)" %
                (self.global_ok, n, len(self.items)))


def strict_parity(rep):
    """Search all assignments of block coordinates to diagonal positions.

    global_ok records whether the full eigenvalue multiset at
    Frob_infinity matches the alternating pattern at all; an individual
    arrangement is accepted for a sign when every block realizes
    exactly the alternating signs on its positions (scalar blocks need
    them all equal)."""
    blocks = frob_infinity(rep)
    dims = _block_dims(blocks)
    n = sum(dims)
    eigs = sorted(frob_infinity_eigenvalues(rep))
    global_ok = any(sorted(_needed(s, range(1, n + 1))) == eigs
                    for s in (1, -1))
    items = []
    for arr in _partitions(tuple(range(1, n + 1)), dims):
        signs = []
        reasons = []
        for s in (1, -1):
            why = None
            for block, ps in zip(blocks, arr):
                why = _block_mismatch(block, ps, s)
                if why:
                    break
            if why is None:
                signs.append(s)
            else:
                reasons.append("sign %+d: %s" % (s, why))
        items.append((arr, tuple(signs), "" if signs else "; ".join(reasons)))
    return ParityReport(global_ok, items)


# ---------------------------------------------------------------------------
# level and nebentype

def predicted_level(rep):
    """Conductor away from p: product of q^f_q over ramified primes q,
    with f_q summing (g_i/g_0) * codim of invariants over the
    filtration at q."""
    out = 1
    for q in sorted(rep.ramified_primes()):
        f = Fraction(0)
        for dim, levels in ramification_data(rep, q):
            g0 = levels[0][0]
            for gi, fixed in levels:
                f += Fraction(gi, g0) * (dim - fixed)
        if f.denominator != 1:
            raise ValueError("nonintegral conductor exponent at %d" % q)
        out *= q ** int(f)
    return out


def predicted_nebentype(rep):
    """Prime-to-p part of the determinant, reduced to its conductor."""
    eps, _ = det_decomposition(rep)
    return eps.restrict(eps.conductor)


# ---------------------------------------------------------------------------
# weights

class WeightPrediction:
    """One arrangement's weight data: the exponent reading (a_1..a_n),
    the normalized tuple set sorted by degree, and the character.  When
    the degree-zero module is unavailable at level one the preferred
    tuple is its partner and raised is set."""

    __slots__ = ("arrangement", "exponents", "eps", "tuples", "raised")

    def __init__(self, arrangement, exponents, eps, tuples, raised=False):
        self.arrangement = arrangement
        self.exponents = tuple(exponents)
        self.eps = eps
        self.tuples = list(tuples)
        self.raised = raised

    @property
    def tuple(self):
        return self.tuples[0]

    @property
    def g(self):
        return self.tuples[0].g

    def __repr__(self):
        return ("WeightPrediction(a=%s, b=%s, g=%d%s)" %
                (list(self.exponents), list(self.tuple.b), self.g,
                 ", raised" if self.raised else ""))


def _read_exponents(rep, arrangement):
    blocks = frob_infinity(rep)
    dims = _block_dims(blocks)
    n = sum(dims)
    if len(arrangement) != len(blocks):
        raise ValueError("arrangement has %d parts for %d blocks" %
                         (len(arrangement), len(blocks)))
    flat = sorted(q for ps in arrangement for q in ps)
    if flat != list(range(1, n + 1)):
        raise ValueError("arrangement is not a partition of 1..%d" % n)
    exps = inertia_exponents(rep)
    a = [None] * n
    off = 0
    for d, ps in zip(dims, arrangement):
        if len(ps) != d:
            raise ValueError("block of dimension %d assigned %d positions" %
                             (d, len(ps)))
        for e, q in zip(exps[off:off + d], ps):
            a[q - 1] = e
        off += d
    return tuple(a)


def predicted_weight(rep, arrangement):
    """Weight prediction for one accepted arrangement.

    The exponents are read off in arrangement order, lowered by the
    staircase (n-1, n-2, ..., 0), and normalized; position tuples
    within a scalar block may come in either order and select the
    exponent placement."""
    a = _read_exponents(rep, arrangement)
    n = len(a)
    key = tuple(tuple(sorted(ps)) for ps in arrangement)
    report = strict_parity(rep)
    if not any(arr == key and signs for arr, signs, _ in report.items):
        raise ValueError("arrangement %s fails strict parity" % (arrangement,))
    shifted = [a[i] - (n - 1 - i) for i in range(n)]
    tuples = good_normalize(shifted, rep.p)
    eps = predicted_nebentype(rep)
    raised = False
    if (n == 2 and len(tuples) > 1 and tuples[0].b == (0, 0)
            and eps.is_trivial() and predicted_level(rep) == 1):
        # no cohomology carries the degree-zero choice at level one
        tuples = tuples[1:] + tuples[:1]
        raised = True
    return WeightPrediction(arrangement, a, eps, tuples, raised)


def _arrangement_orders(blocks, arr):
    # scalar blocks leave the exponent placement free
    per = []
    for b, ps in zip(blocks, arr):
        if b[0] == "scalar" and len(ps) > 1:
            per.append(tuple(permutations(ps)))
        else:
            per.append((tuple(ps),))
    for combo in product(*per):
        yield combo


def predictions(rep):
    """All weight predictions over accepted arrangements and exponent
    placements, sorted by degree."""
    report = strict_parity(rep)
    blocks = frob_infinity(rep)
    out = []
    for arr, signs, _ in report.items:
        if not signs:
            continue
        for ordered in _arrangement_orders(blocks, arr):
            out.append(predicted_weight(rep, ordered))
    out.sort(key=lambda w: w.g)
    return out


def choose_exponents(sigma, policy="minimize-g"):
    """Small-degree twists of a two-dimensional block.

    Picks j so that one tame exponent of omega^j sigma vanishes, pairs
    it with the k in {1, 2} whose sign completes the alternating
    pattern, and records every accepted reading as (j, k, a, b, c, g),
    sorted by g.  j is reported in the centered residue system.
    """
    if policy != "minimize-g":
        raise ValueError("unknown policy %r" % (policy,))
    if sigma.dim != 2:
        raise ValueError("need a two-dimensional block")
    blocks = frob_infinity(sigma)
    if len(blocks) != 1 or blocks[0][0] != "scalar":
        raise ValueError("Frob_infinity must be scalar on the block")
    sinf = blocks[0][1]
    p = sigma.p
    rows = []
    seen = set()
    for e in inertia_exponents(sigma):
        j = (-e) % (p - 1)
        asign = sinf if j % 2 == 0 else -sinf
        # the character must carry the opposite sign of the block pair
        k = 1 if asign == 1 else 2
        if (j, k) in seen:
            continue
        seen.add((j, k))
        rho = DirectSum([Twist(sigma, j), Char(p, k)])
        jc = j if j <= (p - 1) // 2 else j - (p - 1)
        for w in predictions(rho):
            a, b, c = w.exponents
            rows.append((jc, k, a, b, c, w.g))
    rows.sort(key=lambda r: r[5])
    return rows


def dual_invariants(rep, arrangement=None):
    """Invariants of the transpose-inverse representation: the same
    level, the inverse nebentype, and the mirrored weight set."""
    if arrangement is None:
        preds = predictions(rep)
        if not preds:
            raise ValueError("no arrangement passes strict parity")
        w = preds[0]
    else:
        w = predicted_weight(rep, arrangement)
    duals = []
    for t in w.tuples:
        for dt in good_normalize([-x for x in reversed(t.b)], rep.p):
            if dt not in duals:
                duals.append(dt)
    duals.sort(key=lambda t: t.g)
    return predicted_level(rep), predicted_nebentype(rep).inverse(), duals
