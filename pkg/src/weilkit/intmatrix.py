"""Exact integer matrices: Smith and Hermite normal forms, determinants.

Matrices are tuples of tuples of Python ints.  The Smith form tracks both
unimodular transforms; pivoting always selects a smallest-absolute-value
nonzero entry, which keeps intermediate growth tame at the sizes this
library works with.  A few mod-p and mod-p^k helpers used by the lattice
and center computations live here as well.
"""

from __future__ import annotations


class IntegerMatrix:
    """Immutable integer matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rs = tuple(tuple(int(c) for c in row) for row in rows)
        if rs:
            w = len(rs[0])
            if any(len(r) != w for r in rs):
                raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", len(rs[0]) if rs else 0)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "IntegerMatrix(%r)" % ([list(r) for r in self.rows],)

    def __mul__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.rows)) if other.rows else []
        return IntegerMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                for row in self.rows
            )
        )

    def transpose(self):
        return IntegerMatrix(tuple(zip(*self.rows))) if self.rows else self

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))


def identity(n):
    return IntegerMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def det(m):
    """Determinant by fraction-free Bareiss elimination."""
    if m.nrows != m.ncols:
        raise ValueError("square matrix required")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m):
    """Smith normal form with transforms: returns (U, D, V), U*M*V = D.

    D is diagonal with d1 | d2 | ..., all diagonal entries nonnegative;
    U and V are unimodular.
    """
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(i1, i2, c):  # row i1 -= c * row i2
        for j in range(nc):
            a[i1][j] -= c * a[i2][j]
        for j in range(nr):
            u[i1][j] -= c * u[i2][j]

    def col_op(j1, j2, c):  # col j1 -= c * col j2
        for i in range(nr):
            a[i][j1] -= c * a[i][j2]
        for i in range(nc):
            v[i][j1] -= c * v[i][j2]

    def swap_rows(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        for i in range(nr):
            a[i][j1], a[i][j2] = a[i][j2], a[i][j1]
        for i in range(nc):
            v[i][j1], v[i][j2] = v[i][j2], v[i][j1]

    def reduce_block(t):
        """Diagonalize the trailing block starting at (t, t)."""
        while t < min(nr, nc):
            piv = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] != 0 and (
                        piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])
                    ):
                        piv = (i, j)
            if piv is None:
                return
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, nr):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        row_op(i, t, q)
                        if a[i][t]:
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, nc):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        col_op(j, t, q)
                        if a[t][j]:
                            swap_cols(t, j)
                            dirty = True
            t += 1

    reduce_block(0)

    # enforce the divisibility chain: fold a violating d_{j} back into the
    # block at i and rediagonalize from there
    n = min(nr, nc)
    while True:
        bad = None
        for i in range(n - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if (x == 0 and y != 0) or (x != 0 and y % x != 0):
                bad = i
                break
        if bad is None:
            break
        row_op(bad, bad + 1, -1)  # row i += row i+1
        reduce_block(bad)

    for i in range(n):
        if a[i][i] < 0:
            for j in range(nc):
                v[j][i] = -v[j][i]
            a[i][i] = -a[i][i]
    return IntegerMatrix(u), IntegerMatrix(a), IntegerMatrix(v)


def elementary_divisors(m):
    _, d, _ = smith_normal_form(m)
    return d.diagonal()


def hermite_normal_form(m):
    """Row-style HNF: returns (H, U) with U*M = H, U unimodular.

    H is upper triangular in echelon shape with positive pivots and entries
    above a pivot reduced to [0, pivot).
    """
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]

    def row_op(i1, i2, c):
        for j in range(nc):
            a[i1][j] -= c * a[i2][j]
        for j in range(nr):
            u[i1][j] -= c * u[i2][j]

    def swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    r = 0
    for col in range(nc):
        # gcd the column below row r
        while True:
            piv = None
            for i in range(r, nr):
                if a[i][col] != 0 and (piv is None or abs(a[i][col]) < abs(a[piv][col])):
                    piv = i
            if piv is None:
                break
            swap(r, piv)
            done = True
            for i in range(r + 1, nr):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    row_op(i, r, q)
                    if a[i][col]:
                        done = False
            if done:
                break
        if r < nr and a[r][col] != 0:
            if a[r][col] < 0:
                for j in range(nc):
                    a[r][j] = -a[r][j]
                for j in range(nr):
                    u[r][j] = -u[r][j]
            for i in range(r):
                q = a[i][col] // a[r][col]
                if q:
                    row_op(i, r, q)
            r += 1
            if r == nr:
                break
    return IntegerMatrix(a), IntegerMatrix(u)


def kernel_basis(m):
    """Basis of the integer kernel {x : M x = 0}, as rows."""
    u, d, v = smith_normal_form(m)
    rank = sum(1 for x in d.diagonal() if x != 0)
    cols = []
    for j in range(rank, m.ncols):
        cols.append(tuple(v.rows[i][j] for i in range(m.ncols)))
    return cols


# -- modular helpers -----------------------------------------------------


def rref_mod_p(rows, p):
    """Reduced row echelon form mod p; returns (rows, pivot_columns)."""
    a = [[c % p for c in row] for row in rows]
    if not a:
        return [], []
    nc = len(a[0])
    pivots = []
    r = 0
    for col in range(nc):
        piv = None
        for i in range(r, len(a)):
            if a[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][col], -1, p)
        a[r] = [(c * inv) % p for c in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [(c - f * d) % p for c, d in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace_mod_p(rows, p, ncols):
    """Basis of the right nullspace of the matrix mod p."""
    ech, pivots = rref_mod_p(rows, p)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, c in zip(ech, pivots):
            vec[c] = (-r[f]) % p
        basis.append(tuple(vec))
    return basis


def zpk_canonical(rows, p, k):
    """Canonical generating rows of the Z/p^k-module spanned by `rows`.

    Computed as the Hermite form of the rows stacked over p^k * identity,
    reduced mod p^k and stripped of zero rows.  Two spans are equal iff
    their canonical forms are equal.
    """
    q = p ** k
    if not rows:
        return ()
    nc = len(rows[0])
    stacked = [list(r) for r in rows] + [
        [q if i == j else 0 for j in range(nc)] for i in range(nc)
    ]
    h, _ = hermite_normal_form(IntegerMatrix(stacked))
    out = []
    for r in h.rows:
        rr = tuple(c % q for c in r)
        if any(rr):
            out.append(rr)
    return tuple(out)


def zpk_smith(rows, p, k, ncols, track_u=False):
    """Smith form over the local ring Z/p^k: returns (exponents, V) or
    (exponents, V, U) with U*A*V = diag(p^exponents) mod p^k; U, V square
    with unit determinant; exponents capped at k.  Entries stay reduced mod
    p^k, so there is no coefficient swell.
    """
    q = p ** k
    a = [[c % q for c in row] for row in rows]
    nr = len(a)
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)] if track_u else None

    def val(x):
        if x == 0:
            return k
        n = 0
        while x % p == 0:
            x //= p
            n += 1
        return n

    exps = []
    t = 0
    while t < min(nr, ncols):
        best = None
        best_v = k
        for i in range(t, nr):
            for j in range(t, ncols):
                if a[i][j]:
                    w = val(a[i][j])
                    if w < best_v:
                        best, best_v = (i, j), w
                        if w == 0:
                            break
            if best_v == 0:
                break
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        if track_u:
            u[t], u[bi] = u[bi], u[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        for row in v:
            row[t], row[bj] = row[bj], row[t]
        piv = a[t][t]
        w = best_v
        unit = piv // p ** w
        # normalize the pivot to exactly p^w (unit row operation)
        unit_inv_full = pow(unit, -1, q)
        if unit != 1:
            for j in range(t, ncols):
                a[t][j] = (a[t][j] * unit_inv_full) % q
            if track_u:
                for j in range(nr):
                    u[t][j] = (u[t][j] * unit_inv_full) % q
        for i in range(t + 1, nr):
            if a[i][t]:
                quot = (a[i][t] // p ** w) % (p ** (k - w))
                for j in range(t, ncols):
                    a[i][j] = (a[i][j] - quot * a[t][j]) % q
                if track_u:
                    for j in range(nr):
                        u[i][j] = (u[i][j] - quot * u[t][j]) % q
        for j in range(t + 1, ncols):
            if a[t][j]:
                quot = (a[t][j] // p ** w) % (p ** (k - w))
                for i in range(t, nr):
                    a[i][j] = (a[i][j] - quot * a[i][t]) % q
                for i in range(ncols):
                    v[i][j] = (v[i][j] - quot * v[i][t]) % q
        exps.append(w)
        t += 1
    if track_u:
        return exps, v, u
    return exps, v


def zpk_solve(rows, rhs, p, k, ncols):
    """One solution x of A x = rhs mod p^k, or None when inconsistent."""
    q = p ** k
    exps, v, u = zpk_smith(rows, p, k, ncols, track_u=True)
    nr = len(rows)
    # D y = U rhs with D = diag(p^exps)
    ub = [sum(u[i][j] * rhs[j] for j in range(nr)) % q for i in range(nr)]
    y = [0] * ncols
    for i in range(nr):
        e = exps[i] if i < len(exps) else k
        target = ub[i]
        if e >= k:
            if target % q:
                return None
            continue
        pe = p ** e
        if target % pe:
            return None
        y[i] = (target // pe) % (p ** (k - e))
    return [sum(v[i][j] * y[j] for j in range(ncols)) % q for i in range(ncols)]


def zpk_kernel(rows, p, k, ncols):
    """Generators of {x : A x = 0 mod p^k} for A given by `rows`."""
    q = p ** k
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    _, d, v = smith_normal_form(IntegerMatrix(rows))
    diag = list(d.diagonal())
    gens = []
    for j in range(ncols):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            mult = 1
        else:
            # need dj * y = 0 mod p^k: y multiple of p^(k - v_p(dj)) when v < k
            v_p = 0
            t = dj
            while t % p == 0:
                t //= p
                v_p += 1
            mult = p ** max(k - v_p, 0) if v_p < k else 1
        col = tuple((v.rows[i][j] * mult) % q for i in range(ncols))
        if any(col):
            gens.append(col)
    return gens
