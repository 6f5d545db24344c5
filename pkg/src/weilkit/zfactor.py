"""Irreducibility over Q for monic integer polynomials of small degree.

Strategy: factor modulo several good primes and intersect the attainable
factor-degree sets; if only the trivial split survives, the polynomial is
irreducible.  Otherwise candidate factors are reconstructed from a
Hensel-lifted factorization at one prime and verified by exact trial
division (a small-scale Zassenhaus round, entirely adequate below degree
ten).
"""

from __future__ import annotations

from itertools import combinations

from . import gfpoly as gp
from .hensel import lift_factorization
from .intpoly import IntPolynomial, divmod_exact, is_squarefree

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _degree_sums(degrees):
    """All degrees realizable as sums of sub-multisets (excluding 0 and all)."""
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    total = sum(degrees)
    return {s for s in sums if 0 < s < total}


def _mignotte_bound(poly):
    """Bound on the absolute coefficients of any monic factor."""
    norm_sq = sum(c * c for c in poly.coeffs)
    # ceil(sqrt()) via isqrt
    from math import isqrt

    root = isqrt(norm_sq)
    if root * root < norm_sq:
        root += 1
    return (2 ** poly.degree) * (root + abs(poly.lc))


def _degree_pattern(coeffs, p):
    """Degrees (with multiplicity) of the irreducible factors mod p of a
    squarefree-mod-p polynomial, via distinct-degree splitting only; None
    when the reduction is not squarefree."""
    f = gp.gf_monic(coeffs, p)
    if len(gp.gf_gcd(f, gp.gf_deriv(f, p), p)) - 1 != 0:
        return None
    return [
        d for block, d in gp.distinct_degree_split(f, p)
        for _ in range((len(block) - 1) // d)
    ]


def is_irreducible(poly):
    """Irreducibility over Q of a monic integer polynomial (degree <= 10)."""
    if not poly.is_monic:
        raise ValueError("monic polynomial required")
    n = poly.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    if poly.coeffs[0] == 0:
        return False  # x divides
    if not is_squarefree(poly):
        return False

    candidates = None
    good = 0
    for p in _PRIMES:
        degrees = _degree_pattern(list(poly.coeffs), p)
        if degrees is None:
            continue  # ramified prime, degree pattern unusable
        if len(degrees) == 1:
            return True  # irreducible mod p
        sums = _degree_sums(degrees)
        candidates = sums if candidates is None else candidates & sums
        if not candidates:
            return True
        good += 1
        if good >= 4:
            break

    return _zassenhaus_irreducible(poly)


def _zassenhaus_irreducible(poly):
    """Certify (ir)reducibility by trial factor reconstruction at one prime."""
    n = poly.degree
    for p in _PRIMES:
        reduced = gp.gf_normal(list(poly.coeffs), p)
        if len(reduced) - 1 != n:
            continue
        _, factors = gp.factor(reduced, p)
        if any(mult > 1 for _, mult in factors):
            continue
        mod_factors = [list(f) for f, _ in factors]
        if len(mod_factors) == 1:
            return True
        bound = _mignotte_bound(poly)
        k = 1
        pk = p
        while pk <= 2 * bound:
            pk *= p
            k += 1
        lifted = lift_factorization(list(poly.coeffs), mod_factors, p, k)
        half = pk // 2
        indices = range(len(lifted))
        # try all proper subsets up to half the factors
        for size in range(1, len(lifted) // 2 + 1):
            for subset in combinations(indices, size):
                prod = [1]
                for i in subset:
                    prod = _mul_mod_list(prod, lifted[i], pk)
                cand = [c - pk if c > half else c for c in prod]
                candidate = IntPolynomial(cand)
                if candidate.degree == 0 or candidate.degree == n:
                    continue
                try:
                    divmod_exact(poly, candidate)
                    return False
                except ValueError:
                    continue
        return True
    raise AssertionError("no usable prime found for %r" % (poly,))


def _mul_mod_list(a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return out
