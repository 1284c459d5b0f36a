"""Small dense linear algebra over a FiniteField, plus integer row HNF.

Matrices are lists of equal-length lists.  Nothing here is tuned: every
matrix in this project is tiny, correctness and determinism are what count.
"""


def identity_matrix(field, n):
    return [[field.one() if i == j else field.zero() for j in range(n)]
            for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, m, r = len(a), len(b), len(b[0])
    assert len(a[0]) == m
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = a[i][0] * b[0][j]
            for t in range(1, m):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return out


def rref(rows):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def mat_rank(rows):
    return len(rref(rows)[0])


def kernel_basis(rows, field, ncols=None):
    """Basis of the right kernel {v : rows * v = 0}."""
    if not rows:
        return identity_matrix(field, ncols) if ncols else []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def solve_right(rows, rhs, field):
    """One solution v of rows * v = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0]) if rows else 0
    if ncols in pivots:
        return None
    v = [field.zero()] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = red[i][-1]
    return v


def charpoly(a, field):
    """Characteristic polynomial det(X*I - a), coefficients low degree first.

    Uses the Hessenberg reduction, which needs only field divisions, so it
    is safe in small characteristic where the trace-based recursions break.
    """
    n = len(a)
    if n == 0:
        return [field.one()]
    h = [list(r) for r in a]
    for m in range(1, n):
        # find a nonzero entry below the subdiagonal in column m-1
        pr = None
        for i in range(m, n):
            if not h[i][m - 1].is_zero():
                pr = i
                break
        if pr is None:
            continue
        if pr != m:
            h[m], h[pr] = h[pr], h[m]
            for row in h:
                row[m], row[pr] = row[pr], row[m]
        piv = h[m][m - 1]
        for i in range(m + 1, n):
            if not h[i][m - 1].is_zero():
                u = h[i][m - 1] / piv
                h[i] = [x - u * y for x, y in zip(h[i], h[m])]
                for row in h:
                    row[m] = row[m] + u * row[i]
    # charpoly of a Hessenberg matrix by the standard recurrence
    polys = [[field.one()]]
    for m in range(1, n + 1):
        # p_m(X) = (X - h[m-1][m-1]) p_{m-1}(X) - sum of corner products
        prev = polys[m - 1]
        cur = [field.zero()] + list(prev)
        for i, c in enumerate(prev):
            cur[i] = cur[i] - h[m - 1][m - 1] * c
        t = field.one()
        for i in range(1, m):
            t = t * h[m - i][m - i - 1]
            coef = t * h[m - i - 1][m - 1]
            base = polys[m - i - 1]
            for j, c in enumerate(base):
                cur[j] = cur[j] - coef * c
        polys.append(cur)
    return polys[n]


# ---------------------------------------------------------------------------
# Integer lattices: row-style Hermite normal form, no pivoting subtleties
# needed at 4x4 scale.

def hnf_rows(rows):
    """Hermite normal form of the row lattice of an integer matrix.

    Returns the nonzero rows, upper triangular with positive pivots and
    entries above each pivot reduced into [0, pivot).
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        # euclid the column below the pivot to zero
        for i in range(r + 1, len(m)):
            while m[i][c] != 0:
                q = m[r][c] // m[i][c]
                m[r] = [a - q * b for a, b in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m if any(row)]
