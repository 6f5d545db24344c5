import random

from weilkit.intmatrix import (
    IntegerMatrix,
    det,
    elementary_divisors,
    hermite_normal_form,
    identity,
    kernel_basis,
    nullspace_mod_p,
    smith_normal_form,
    zpk_canonical,
    zpk_kernel,
)


def _check_snf(m):
    u, d, v = smith_normal_form(m)
    assert u * m * v == d
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    diag = d.diagonal()
    for i in range(m.nrows):
        for j in range(m.ncols):
            if i != j:
                assert d[i, j] == 0
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    return diag


def _reduction_oracle(m):
    """Exhaustive elementary row/column reduction without transform tracking."""
    a = [list(r) for r in m.rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        a[t], a[piv[0]] = a[piv[0]], a[t]
        for row in a:
            row[t], row[piv[1]] = row[piv[1]], row[t]
        again = True
        while again:
            again = False
            for i in range(nr):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(nc):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        again = True
            for j in range(nc):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(nr):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        again = True
        t += 1
    from math import gcd

    diag = [abs(a[i][i]) for i in range(min(nr, nc))]
    # oracle fixes the chain by gcd/lcm folding
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            l = diag[i] * diag[j] // g if g else 0
            diag[i], diag[j] = g, l
    return sorted(diag)[: len(diag)]


def test_snf_examples():
    m = IntegerMatrix([[2, 4], [6, 8]])
    diag = _check_snf(m)
    assert tuple(diag) == (2, 4)
    assert _check_snf(identity(3)) == (1, 1, 1)
    assert _check_snf(IntegerMatrix([[0, 0], [0, 0]])) == (0, 0)


def test_snf_random():
    rng = random.Random(5)
    for _ in range(60):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = IntegerMatrix([[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)])
        diag = _check_snf(m)
        oracle = _reduction_oracle(m)
        assert sorted(abs(x) for x in diag) == sorted(oracle)
        if nr == nc:
            prod = 1
            for x in diag:
                prod *= x
            assert prod == abs(det(m))


def test_det():
    assert det(IntegerMatrix([[2, 0], [0, 3]])) == 6
    assert det(IntegerMatrix([[1, 2], [3, 4]])) == -2
    assert det(identity(4)) == 1
    assert det(IntegerMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0


def test_hnf():
    m = IntegerMatrix([[2, 4], [6, 8]])
    h, u = hermite_normal_form(m)
    assert u * m == h
    assert abs(det(u)) == 1
    assert h[0, 0] > 0
    # echelon: below-diagonal zero
    assert h[1, 0] == 0


def test_hnf_canonical_for_equal_lattices():
    # two generating sets of the same row lattice
    m1 = IntegerMatrix([[1, 2], [0, 3]])
    m2 = IntegerMatrix([[1, 5], [1, 2], [0, 3]])
    h1, _ = hermite_normal_form(m1)
    h2, _ = hermite_normal_form(m2)
    rows1 = [r for r in h1.rows if any(r)]
    rows2 = [r for r in h2.rows if any(r)]
    assert rows1 == rows2


def test_kernel():
    m = IntegerMatrix([[1, 2, 3], [2, 4, 6]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for vec in basis:
        assert all(
            sum(m[i, j] * vec[j] for j in range(3)) == 0 for i in range(2)
        )


def test_nullspace_mod_p():
    basis = nullspace_mod_p([[1, 1, 0], [0, 1, 1]], 3, 3)
    assert len(basis) == 1
    v = basis[0]
    assert (v[0] + v[1]) % 3 == 0 and (v[1] + v[2]) % 3 == 0


def test_zpk_canonical_module_equality():
    p, k = 3, 3
    gens1 = [(1, 3), (0, 9)]
    gens2 = [(1, 12), (0, 9), (3, 9)]
    assert zpk_canonical(gens1, p, k) == zpk_canonical(gens2, p, k)
    gens3 = [(1, 0), (0, 1)]
    assert zpk_canonical(gens1, p, k) != zpk_canonical(gens3, p, k)


def test_zpk_kernel():
    p, k = 3, 2
    rows = [(3, 0), (0, 1)]
    gens = zpk_kernel(rows, p, k, 2)
    q = p ** k
    for g in gens:
        assert (3 * g[0]) % q == 0 and g[1] % q == 0
    # 3x = 0 mod 9 has solutions x = 0, 3, 6: kernel nontrivial
    assert any(any(c for c in g) for g in gens)
