"""Modular symbols for Gamma_0(N) in odd characteristic p not dividing
6N: the Manin presentation with Sym^g coefficients twisted by a
Dirichlet character, Hecke operators away from the level, eigenvector
extraction, and the reducible two-dimensional verification loop.

Conventions, fixed once and pinned by the dimension and eigenvalue
oracles in the tests:
  * symbols are labels (c : d) in P^1(Z/N) times monomials X^i Y^(g-i);
  * a matrix [[a, b], [c, d]] acts on the right of a polynomial by the
    substitution (X, Y) -> (aX + bY, cX + dY), and on the right of a
    label as a row vector;
  * scaling a label by a unit u multiplies the symbol by eps(u), not
    its inverse (the order four character mod 5 separates the two);
  * T_l sums the cosets [[1, j], [0, l]] for 0 <= j < l and
    [[l, 0], [0, 1]], the latter weighted by the diamond factor eps(l);
    the polynomial rides through the adjugate, and paths are
    re-expressed by the continued-fraction decomposition of their
    endpoints.

The quotient by x + x.S and x + x.T + x.T^2, S = [[0,-1],[1,0]],
T = [[0,-1],[1,-1]], realizes weight g + 2 symbols: the Eisenstein
line carries a_l = 1 + l^(g+1).
"""

from math import gcd

from .finitefield import ff_factor, ff_roots, finite_field, is_prime
from .galrep import Char, DirectSum, DirichletChar, _embed, trivial_char
from .hecke import EigenSystem, _lift_char, check_attachment
from .linalg import charpoly, kernel_basis, mat_vec, rref, solve_right
from .serre import predicted_nebentype, predictions

_SIG = ((0, -1), (1, 0))
_TAU = ((0, -1), (1, -1))
_TAU2 = ((-1, 1), (-1, 0))


def _mul2(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0],
             a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0],
             a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _adj2(m):
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _lift_sl2(c, d, N):
    """An integer matrix in SL_2(Z) with bottom row (c, d) mod N."""
    if N == 1:
        return ((1, 0), (0, 1))
    c %= N
    d %= N
    for s in range(N + 1):
        cc = c + s * N
        for t in range(N + 1):
            dd = d + t * N
            if gcd(cc, dd) == 1:
                _, xx, yy = _xgcd(dd, cc)
                return ((xx, -yy), (cc, dd))
    raise AssertionError("no unimodular lift of (%d : %d) mod %d" % (c, d, N))


def _inf_path_mats(num, den):
    """Unimodular matrices g_j chaining the path from oo to num/den.

    Each g_j carries {0, oo} onto one unimodular segment; the empty list
    means the endpoint already is oo.
    """
    if den == 0:
        return []
    if den < 0:
        num, den = -num, -den
    q = gcd(abs(num), den)
    if q > 1:
        num //= q
        den //= q
    cf = []
    a, b = num, den
    while b:
        w = a // b
        cf.append(w)
        a, b = b, a - w * b
    mats = []
    pm1, qm1, pm2, qm2 = 1, 0, 0, 1
    for j, w in enumerate(cf):
        pj, qj = w * pm1 + pm2, w * qm1 + qm2
        s = 1 if j % 2 else -1
        mats.append(((pj, s * pm1), (qj, s * qm1)))
        pm2, qm2 = pm1, qm1
        pm1, qm1 = pj, qj
    return mats


class _ProjLine:
    """P^1(Z/N) with unit bookkeeping: lookup maps a raw pair to
    (class index, unit u) where pair = u * representative."""

    def __init__(self, N):
        self.N = N
        if N == 1:
            self.reps = [(0, 1)]
            self.lookup = {(0, 0): (0, 1)}
            return
        units = [u for u in range(1, N) if gcd(u, N) == 1]
        self.reps = []
        self.lookup = {}
        for c in range(N):
            for d in range(N):
                if (c, d) in self.lookup or gcd(gcd(c, d), N) != 1:
                    continue
                orbit = {}
                for u in units:
                    orbit.setdefault((u * c % N, u * d % N), u)
                rep = min(orbit)
                idx = len(self.reps)
                self.reps.append(rep)
                uinv = pow(orbit[rep], -1, N)
                for pair, u in orbit.items():
                    self.lookup[pair] = (idx, u * uinv % N)

    def normalize(self, c, d):
        return self.lookup[(c % self.N, d % self.N)]

    def __len__(self):
        return len(self.reps)


class ManinBasis:
    """The quotient of the free module on P^1(Z/N) x {X^i Y^(g-i)} by
    the two Manin relations, with reduction of arbitrary raw symbols
    onto a frozen echelon basis."""

    def __init__(self, p, N, g, eps=None):
        if p <= 3:
            raise ValueError("characteristic must exceed 3")
        if not is_prime(p):
            raise ValueError("p must be prime")
        if N < 1 or (6 * N) % p == 0:
            raise ValueError("p must not divide 6N")
        if g < 0:
            raise ValueError("negative coefficient degree")
        if eps is None:
            eps = trivial_char(finite_field(p))
        if eps.field.p != p:
            raise ValueError("character values live in the wrong characteristic")
        if N % eps.modulus != 0:
            raise ValueError("character modulus must divide the level")
        self.p = p
        self.N = N
        self.g = g
        self.eps = eps
        self.field = eps.field
        self._line = _ProjLine(N)
        self._subcache = {}
        self._uval = {1: self.field.one()}
        if N > 1:
            for u in range(1, N):
                if gcd(u, N) == 1:
                    self._uval[u] = eps(u)
        g1 = g + 1
        m = len(self._line) * g1
        zero = self.field.zero()
        rows = []
        for cls in range(len(self._line)):
            ts = self._class_transform(cls, _SIG)
            t1 = self._class_transform(cls, _TAU)
            t2 = self._class_transform(cls, _TAU2)
            for i in range(g1):
                row = [zero] * m
                row[cls * g1 + i] = self.field.one()
                for r, cf in ts[i]:
                    row[r] = row[r] + cf
                rows.append(row)
                row = [zero] * m
                row[cls * g1 + i] = self.field.one()
                for r, cf in t1[i]:
                    row[r] = row[r] + cf
                for r, cf in t2[i]:
                    row[r] = row[r] + cf
                rows.append(row)
        red, pivots = rref(rows)
        pivset = set(pivots)
        free = [c for c in range(m) if c not in pivset]
        self.dimension = len(free)
        self._free = free
        self._free_pos = {c: t for t, c in enumerate(free)}
        pivrow = {c: i for i, c in enumerate(pivots)}
        tab = []
        for r in range(m):
            v = [zero] * self.dimension
            if r in self._free_pos:
                v[self._free_pos[r]] = self.field.one()
            else:
                rr = red[pivrow[r]]
                for t, c in enumerate(free):
                    v[t] = -rr[c]
            tab.append(v)
        self._tab = tab
        self.symbols = [(self._line.reps[c // g1], c % g1) for c in free]

    def _subst(self, mat):
        """Matrix of P -> P(aX+bY, cX+dY) on the monomial basis."""
        key = (mat[0][0] % self.p, mat[0][1] % self.p,
               mat[1][0] % self.p, mat[1][1] % self.p)
        hit = self._subcache.get(key)
        if hit is not None:
            return hit
        g = self.g
        fld = self.field
        a, b = fld.elem(mat[0][0]), fld.elem(mat[0][1])
        c, d = fld.elem(mat[1][0]), fld.elem(mat[1][1])
        pow1 = [[fld.one()]]
        pow2 = [[fld.one()]]
        for _ in range(g):
            v = pow1[-1]
            nv = [fld.zero()] * (len(v) + 1)
            for s, x in enumerate(v):
                nv[s + 1] = nv[s + 1] + a * x
                nv[s] = nv[s] + b * x
            pow1.append(nv)
            w = pow2[-1]
            nw = [fld.zero()] * (len(w) + 1)
            for s, x in enumerate(w):
                nw[s + 1] = nw[s + 1] + c * x
                nw[s] = nw[s] + d * x
            pow2.append(nw)
        out = [[fld.zero()] * (g + 1) for _ in range(g + 1)]
        for i in range(g + 1):
            u = pow1[i]
            v = pow2[g - i]
            for s, x in enumerate(u):
                if not x.is_zero():
                    for t, y in enumerate(v):
                        out[s + t][i] = out[s + t][i] + x * y
        self._subcache[key] = out
        return out

    def _class_transform(self, cls, mat):
        c, d = self._line.reps[cls]
        cc = c * mat[0][0] + d * mat[1][0]
        dd = c * mat[0][1] + d * mat[1][1]
        idx, u = self._line.normalize(cc, dd)
        f = self._uval[u]
        sub = self._subst(mat)
        base = idx * (self.g + 1)
        out = []
        for i in range(self.g + 1):
            out.append([(base + j, f * sub[j][i])
                        for j in range(self.g + 1) if not sub[j][i].is_zero()])
        return out

    def __repr__(self):
        return "ManinBasis(p=%d, N=%d, g=%d, dim=%d)" % (
            self.p, self.N, self.g, self.dimension)


def build_space(p, N, g, eps=None):
    return ManinBasis(p, N, g, eps)


def hecke_operator(basis, l):
    """Matrix of T_l on the quotient basis; columns are images, so
    eigenvectors are columns v with T v = a_l v."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    if basis.N % l == 0:
        raise ValueError("U_%d at a prime dividing the level is out of scope" % l)
    g1 = basis.g + 1
    dim = basis.dimension
    zero = basis.field.zero()
    # the lower-triangular coset needs the explicit diamond weight eps(l);
    # without it the sum is not well defined on the character quotient
    cosets = [(((1, j), (0, l)), basis.field.one()) for j in range(l)]
    cosets.append((((l, 0), (0, 1)), basis._uval[l % basis.N]
                   if basis.N > 1 else basis.field.one()))
    cols = {}
    for cls in sorted({c // g1 for c in basis._free}):
        c0, d0 = basis._line.reps[cls]
        gam = _lift_sl2(c0, d0, basis.N)
        acc = [[zero] * dim for _ in range(g1)]
        for h, wt in cosets:
            M = _mul2(h, gam)
            adjM = _adj2(M)
            # path {M.0, M.oo} = {oo, M.oo} - {oo, M.0}
            for mats, plus in (((_inf_path_mats(M[0][0], M[1][0])), True),
                               ((_inf_path_mats(M[0][1], M[1][1])), False)):
                for gj in mats:
                    sub = basis._subst(_mul2(adjM, gj))
                    idx, u = basis._line.normalize(gj[1][0], gj[1][1])
                    f = wt * basis._uval[u]
                    if not plus:
                        f = -f
                    base = idx * g1
                    for j in range(g1):
                        tv = basis._tab[base + j]
                        srow = sub[j]
                        for i in range(g1):
                            cf = srow[i]
                            if cf.is_zero():
                                continue
                            cf = cf * f
                            av = acc[i]
                            for t in range(dim):
                                if not tv[t].is_zero():
                                    av[t] = av[t] + cf * tv[t]
        for i in range(g1):
            r = cls * g1 + i
            if r in basis._free_pos:
                cols[basis._free_pos[r]] = acc[i]
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def _restrict(T, V, field):
    """Matrix of T on the span of the column vectors V (None = whole)."""
    if V is None:
        return T
    if not V:
        return []
    rows = [[v[i] for v in V] for i in range(len(V[0]))]
    out_cols = []
    for v in V:
        r = solve_right(rows, mat_vec(T, v), field)
        if r is None:
            raise AssertionError("subspace is not Hecke stable")
        out_cols.append(r)
    d = len(V)
    return [[out_cols[j][i] for j in range(d)] for i in range(d)]


def _combine(V, ker):
    """Columns of V recombined by the coordinate vectors in ker."""
    if V is None:
        return [list(w) for w in ker]
    out = []
    for w in ker:
        v = None
        for c, base in zip(w, V):
            term = [c * x for x in base]
            v = term if v is None else [a + b for a, b in zip(v, term)]
        out.append(v)
    return out


class GL2Eigensystem:
    """One simultaneous eigenvector: the map l -> a_l together with the
    ambient (p, N, g, eps) and the multiplicity of its eigenspace."""

    __slots__ = ("p", "N", "g", "eps", "field", "a", "multiplicity")

    def __init__(self, p, N, g, eps, field, a, multiplicity):
        self.p = p
        self.N = N
        self.g = g
        self.eps = eps
        self.field = field
        self.a = dict(a)
        self.multiplicity = multiplicity

    @property
    def weight(self):
        return self.g + 2

    def to_eigensystem(self):
        """Repackage as the n = 2 eigenvalue object of the attachment
        layer, keeping only l coprime to pN."""
        tab = {l: (v,) for l, v in self.a.items()
               if gcd(l, self.p * self.N) == 1}
        eps = _lift_char(self.eps, self.field)
        eps = eps.restrict(eps.conductor)
        return EigenSystem(self.p, self.N, self.g, tab, eps=eps, n=2)

    def __repr__(self):
        return "GL2Eigensystem(p=%d, N=%d, k=%d, %d primes)" % (
            self.p, self.N, self.weight, len(self.a))


def eigensystems(basis, lmax, max_degree=6):
    """Split the space under T_2, T_3, ... T_lmax into simultaneous
    eigenspaces by iterated kernel splitting.

    Eigenvalues outside F_{p^k} force a field extension; a branch whose
    characteristic polynomial has no root within extensions of total
    degree max_degree is dropped, as is any non-semisimple residue.
    """
    primes = [l for l in range(2, lmax + 1) if is_prime(l) and basis.N % l]
    base = basis.field
    if basis.dimension == 0 or not primes:
        return []
    spaces = [(base, None, {})]
    for l in primes:
        T0 = hecke_operator(basis, l)
        emb_ops = {base.k: T0}

        def op_in(K):
            if K.k not in emb_ops:
                em = _embed(base, K)
                emb_ops[K.k] = [[em(x) for x in row] for row in T0]
            return emb_ops[K.k]

        nxt = []
        stack = list(spaces)
        while stack:
            K, V, amap = stack.pop()
            R = _restrict(op_in(K), V, K)
            d = len(R)
            if d == 0:
                continue
            cp = charpoly(R, K)
            rts = ff_roots(cp, K)
            if not rts:
                _, facs = ff_factor(cp, K)
                e = min(len(f) - 1 for f, _ in facs)
                if K.k * e > max_degree:
                    continue
                K2 = finite_field(basis.p, K.k * e)
                em = _embed(K, K2)
                V2 = None if V is None else [[em(x) for x in v] for v in V]
                stack.append((K2, V2, {q: em(v) for q, v in amap.items()}))
                continue
            for lam in rts:
                shifted = [[R[i][j] - lam if i == j else R[i][j]
                            for j in range(d)] for i in range(d)]
                ker = kernel_basis(shifted, K, d)
                if not ker:
                    continue
                a2 = dict(amap)
                a2[l] = lam
                nxt.append((K, _combine(V, ker), a2))
        spaces = nxt
    out = [GL2Eigensystem(basis.p, basis.N, basis.g, basis.eps, K,
                          amap, len(V) if V is not None else basis.dimension)
           for K, V, amap in spaces]
    out.sort(key=lambda s: (s.field.k,
                            tuple((l, s.field.index_of(s.a[l]))
                                  for l in sorted(s.a))))
    return out


class Prop27Report:
    """Outcome of the reducible two-dimensional verification."""

    __slots__ = ("covered", "reason", "p", "a", "level", "weight", "g",
                 "raised", "eps", "dimension", "eigen_dim", "expected",
                 "attachment")

    def __init__(self, covered, reason, p, a, level=None, weight=None,
                 g=None, raised=False, eps=None, dimension=None,
                 eigen_dim=None, expected=None, attachment=None):
        self.covered = covered
        self.reason = reason
        self.p = p
        self.a = a
        self.level = level
        self.weight = weight
        self.g = g
        self.raised = raised
        self.eps = eps
        self.dimension = dimension
        self.eigen_dim = eigen_dim
        self.expected = expected or {}
        self.attachment = attachment

    @property
    def ok(self):
        return (self.covered and self.eigen_dim and self.eigen_dim > 0
                and self.attachment is not None and self.attachment.verdict)

    def format_lines(self):
        if not self.covered:
            return [self.reason]
        lines = [
            "p = %d, a = %d" % (self.p, self.a),
            "level %d, weight %d%s, symbol space dimension %d" % (
                self.level, self.weight,
                " (raised)" if self.raised else "", self.dimension),
            "joint eigenspace dimension %d" % self.eigen_dim,
        ]
        lines.extend(self.attachment.format_table().splitlines())
        lines.append("VERIFIED" if self.ok else "FAILED")
        return lines


def verify_prop27(x, y, a, p, lmax=13):
    """Check the reducible two-dimensional picture for x omega^a + y:
    parity gate, weight and level prediction, an eigenvector with
    a_l = x(l) l^a + y(l) in the predicted space, and the degree-2
    coefficient identity against the representation."""
    if not is_prime(p) or p <= 3:
        raise ValueError("p must be a prime exceeding 3")
    if not 1 <= a <= p:
        raise ValueError("exponent a out of range")
    if x.field.p != p or y.field.p != p:
        raise ValueError("character values live in the wrong characteristic")
    kx, ky = x.field.k, y.field.k
    K = finite_field(p, kx * ky // gcd(kx, ky))
    xp = _lift_char(x, K)
    yp = _lift_char(y, K)
    xp = xp.restrict(xp.conductor)
    yp = yp.restrict(yp.conductor)
    N, M = xp.modulus, yp.modulus
    if (6 * N * M) % p == 0:
        raise ValueError("p must not divide 6NM")
    want = K.one() if a % 2 else -K.one()
    if xp(-1) * yp(-1) != want:
        return Prop27Report(False,
                            "not covered: XY(-1) differs from (-1)^(a+1)",
                            p, a)
    rho = DirectSum([Char(p, a % (p - 1), chi=xp), Char(p, 0, chi=yp)])
    w = predictions(rho)[0]
    b1, b2 = w.tuple.b
    assert b2 == 0
    # level is the product of the two conductors; going through the
    # generic filtration walk would reject conductors like 4 = 2^2
    lev = N * M
    eps = predicted_nebentype(rho)
    sp = build_space(p, lev, b1, eps=xp * yp)
    ls = [l for l in range(2, lmax + 1) if is_prime(l) and lev % l]
    expect = {}
    for l in ls:
        expect[l] = xp(l) * K.elem(pow(l, a, p)) + yp(l)
    V = None
    dim_joint = sp.dimension
    for l in ls:
        if dim_joint == 0:
            break
        T = hecke_operator(sp, l)
        R = _restrict(T, V, K)
        lam = expect[l]
        shifted = [[R[i][j] - lam if i == j else R[i][j]
                    for j in range(len(R))] for i in range(len(R))]
        ker = kernel_basis(shifted, K, len(R))
        V = _combine(V, ker)
        dim_joint = len(V)
    good = [l for l in ls if l != p]
    es = EigenSystem(p, lev, w.g, {l: (expect[l],) for l in good},
                     eps=eps, n=2)
    rpt = check_attachment(rho, es, good)
    return Prop27Report(True, "", p, a, level=lev, weight=b1 + 2, g=w.g,
                        raised=w.raised, eps=eps, dimension=sp.dimension,
                        eigen_dim=dim_joint, expected=expect,
                        attachment=rpt)
