"""Polynomial arithmetic and factorization over the prime fields F_p.

Polynomials over F_p are plain lists of ints in [0, p), constant term
first, normalized so the last entry is nonzero ([] is zero).  Factorization
runs squarefree / distinct-degree / equal-degree splitting; the equal-degree
step draws its splitting candidates from a fixed deterministic sequence so
repeated runs factor identically.
"""

from __future__ import annotations


def gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def gf_normal(a, p):
    return gf_trim([c % p for c in a])


def gf_add(a, b, p):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        out.append(x % p)
    return gf_trim(out)


def gf_sub(a, b, p):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
        out.append(x % p)
    return gf_trim(out)


def gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return gf_trim([c % p for c in out])


def gf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i in range(len(b)):
            a[shift + i] = (a[shift + i] - c * b[i]) % p
        gf_trim(a)
    return gf_trim(q), a


def gf_mod(a, b, p):
    return gf_divmod(a, b, p)[1]


def gf_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, gf_mod(a, b, p)
    return gf_monic(a, p)


def gf_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def gf_pow_mod(a, n, mod, p):
    result = [1]
    base = gf_mod(a, mod, p)
    while n:
        if n & 1:
            result = gf_mod(gf_mul(result, base, p), mod, p)
        base = gf_mod(gf_mul(base, base, p), mod, p)
        n >>= 1
    return result


def gf_deriv(a, p):
    return gf_trim([(i * c) % p for i, c in enumerate(a) if i > 0])


def gf_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def gf_pth_root(a, p):
    """p-th root of a polynomial in x^p; scalars are Frobenius-fixed in F_p."""
    return gf_trim([a[i] for i in range(0, len(a), p)])


def is_irreducible(a, p):
    """Rabin irreducibility test over F_p."""
    n = len(a) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    a = gf_monic(a, p)
    x = [0, 1]
    # x^(p^n) == x mod a
    h = x
    for _ in range(n):
        h = gf_pow_mod(h, p, a, p)
    if gf_sub(h, x, p):
        return False
    for ell in sorted({f for f in _prime_factors(n)}):
        h = x
        for _ in range(n // ell):
            h = gf_pow_mod(h, p, a, p)
        if len(gf_gcd(gf_sub(h, x, p), a, p)) - 1 != 0:
            return False
    return True


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def lexicographically_smallest_irreducible(p, n):
    """Smallest monic irreducible of degree n over F_p, coefficient vectors
    (constant first) ordered lexicographically."""
    if n == 1:
        return [0, 1]
    # iterate constant-first coefficient tuples
    total = p ** n
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        poly = coeffs + [1]
        if poly[0] == 0:
            continue
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible of degree %d over F_%d" % (n, p))


# -- factorization -------------------------------------------------------


def squarefree_decomposition(a, p):
    """Yield (factor, multiplicity) with factor squarefree, product = a (monic)."""
    a = gf_monic(a, p)
    out = []

    def rec(f, mult):
        if len(f) - 1 <= 0:
            return
        g = gf_gcd(f, gf_deriv(f, p), p)
        w = gf_divmod(f, g, p)[0]  # product of factors with multiplicity not divisible by p
        i = 1
        while len(w) - 1 > 0:
            y = gf_gcd(w, g, p)
            z = gf_divmod(w, y, p)[0]
            if len(z) - 1 > 0:
                out.append((gf_monic(z, p), mult * i))
            w = y
            g = gf_divmod(g, y, p)[0]
            i += 1
        if len(g) - 1 > 0:
            # what is left is a perfect p-th power
            rec(gf_pth_root(g, p), mult * p)

    rec(a, 1)
    return out


def distinct_degree_split(a, p):
    """For squarefree monic a: list of (product_of_factors_of_degree_d, d)."""
    out = []
    f = list(a)
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = gf_pow_mod(h, p, f, p)
        g = gf_gcd(gf_sub(h, [0, 1], p), f, p)
        if len(g) - 1 > 0:
            out.append((g, d))
            f = gf_divmod(f, g, p)[0]
            h = gf_mod(h, f, p)
    if len(f) - 1 > 0:
        out.append((gf_monic(f, p), len(f) - 1))
    return out


def _candidate_sequence(p, degree_bound):
    """Deterministic sequence of nonconstant polynomials used for splitting."""
    code = p  # skip the constants
    while True:
        coeffs = []
        c = code
        while c:
            coeffs.append(c % p)
            c //= p
        if len(coeffs) - 1 <= degree_bound and len(coeffs) >= 2:
            yield coeffs
        code += 1


def equal_degree_split(a, d, p):
    """Split squarefree monic a whose irreducible factors all have degree d."""
    n = len(a) - 1
    if n == d:
        return [gf_monic(a, p)]
    for cand in _candidate_sequence(p, n - 1):
        if p == 2:
            # trace map sum_{i<d} cand^(2^i)
            t = list(cand)
            acc = list(cand)
            for _ in range(d - 1):
                t = gf_mod(gf_mul(t, t, p), a, p)
                acc = gf_add(acc, t, p)
            g = gf_gcd(acc, a, p)
        else:
            e = (p ** d - 1) // 2
            t = gf_pow_mod(cand, e, a, p)
            g = gf_gcd(gf_sub(t, [1], p), a, p)
        if 0 < len(g) - 1 < n:
            left = equal_degree_split(g, d, p)
            right = equal_degree_split(gf_divmod(a, g, p)[0], d, p)
            return left + right
    raise AssertionError("splitting sequence exhausted")


def factor(a, p):
    """Full factorization over F_p: returns (lc, [(monic_irreducible, mult)]).

    Factors are sorted by (degree, coefficient tuple) for determinism.
    """
    if not a:
        raise ValueError("zero polynomial")
    lc = a[-1] % p
    a = gf_monic(a, p)
    found = []
    for sq, mult in squarefree_decomposition(a, p):
        for block, d in distinct_degree_split(sq, p):
            for irr in equal_degree_split(block, d, p):
                found.append((tuple(irr), mult))
    found.sort(key=lambda t: (len(t[0]), t[0]))
    return lc, found
