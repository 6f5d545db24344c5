import random

import pytest

from weilkit import gfpoly as gp


def test_basic_ops():
    p = 5
    a = [1, 2, 3]
    b = [4, 1]
    assert gp.gf_add(a, b, p) == [0, 3, 3]
    assert gp.gf_mul([1, 1], [1, 4], p) == [1, 0, 4]
    q, r = gp.gf_divmod([1, 0, 1], [2, 1], p)
    assert gp.gf_add(gp.gf_mul(q, [2, 1], p), r, p) == [1, 0, 1]


def test_gcd():
    p = 7
    a = gp.gf_mul([1, 1], [2, 1], p)
    b = gp.gf_mul([1, 1], [3, 1], p)
    assert gp.gf_gcd(a, b, p) == [1, 1]


def test_irreducibility():
    assert gp.is_irreducible([1, 0, 1], 3)  # x^2 + 1 mod 3
    assert not gp.is_irreducible([1, 0, 1], 5)  # (x+2)(x+3) mod 5
    assert gp.is_irreducible([1, 0, 1, 0, 0, 1], 2)  # x^5 + x^2 + 1
    assert gp.is_irreducible([1, 1, 1], 2)
    assert not gp.is_irreducible([1, 0, 1], 2)  # (x+1)^2


def test_x5_x_1_reducible_mod_2():
    prod = gp.gf_mul([1, 1, 1], [1, 0, 1, 1], 2)
    assert prod == [1, 1, 0, 0, 0, 1]
    assert not gp.is_irreducible([1, 1, 0, 0, 0, 1], 2)


def test_lexicographically_smallest_irreducible():
    assert gp.lexicographically_smallest_irreducible(3, 2) == [1, 0, 1]
    m = gp.lexicographically_smallest_irreducible(2, 5)
    assert m == [1, 0, 1, 0, 0, 1]  # x^5 + x^2 + 1
    assert gp.is_irreducible(m, 2)


def _exhaustive_irreducible(poly, p):
    """Oracle for degree <= 3: irreducible iff no roots (deg 2, 3) or no
    divisor of degree 1 (deg 1 trivially irreducible)."""
    d = len(poly) - 1
    if d <= 1:
        return d == 1
    if d <= 3:
        return all(gp.gf_eval(poly, x, p) != 0 for x in range(p))
    raise NotImplementedError


def _check_factorization(poly, p):
    lc, factors = gp.factor(poly, p)
    prod = [lc]
    for f, mult in factors:
        assert f[-1] == 1
        for _ in range(mult):
            prod = gp.gf_mul(prod, list(f), p)
        if len(f) - 1 <= 3:
            assert _exhaustive_irreducible(list(f), p)
        else:
            assert gp.is_irreducible(list(f), p)
    assert prod == gp.gf_normal(list(poly), p)
    return factors


def test_factor_examples():
    # x^2 + 1 irreducible mod 3
    factors = _check_factorization([1, 0, 1], 3)
    assert factors == [((1, 0, 1), 1)]
    # x^2 + x mod 3
    factors = _check_factorization([0, 1, 1], 3)
    assert factors == [((0, 1), 1), ((1, 1), 1)]
    # x^4 - 1 mod 5 splits into linear factors (evaluation oracle)
    factors = _check_factorization([4, 0, 0, 0, 1], 5)
    assert [f for f, _ in factors] == [(1, 1), (2, 1), (3, 1), (4, 1)]
    roots = {(-f[0]) % 5 for f, _ in factors}
    assert roots == {x for x in range(1, 5) if pow(x, 4, 5) == 1}


def test_factor_with_multiplicities():
    # (x+1)^2 (x^2+1) mod 3
    sq = gp.gf_mul([1, 1], [1, 1], 3)
    poly = gp.gf_mul(sq, [1, 0, 1], 3)
    factors = _check_factorization(poly, 3)
    assert ((1, 1), 2) in factors
    assert ((1, 0, 1), 1) in factors


def test_factor_p_power_multiplicity():
    # (x+1)^3 mod 3 has zero derivative handling
    poly = gp.gf_mul(gp.gf_mul([1, 1], [1, 1], 3), [1, 1], 3)
    factors = _check_factorization(poly, 3)
    assert factors == [((1, 1), 3)]


def test_factor_random():
    rng = random.Random(11)
    for p in (2, 3, 5, 7):
        for _ in range(25):
            deg = rng.randint(1, 8)
            poly = [rng.randrange(p) for _ in range(deg)] + [1]
            _check_factorization(poly, p)


def test_factor_determinism():
    poly = [2, 0, 1, 0, 0, 0, 1, 1]
    assert gp.factor(poly, 3) == gp.factor(poly, 3)


def test_factor_zero_rejected():
    with pytest.raises(ValueError):
        gp.factor([], 7)
