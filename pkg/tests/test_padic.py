import random
from fractions import Fraction

import pytest

from weilkit.intpoly import IntPolynomial
from weilkit.padic import (
    IrregularPlacesError,
    WittRingModel,
    decompose_places,
    default_precision,
    hensel_split,
    make_place,
    newton_polygon,
    v_p,
    witt_frobenius,
)

F = Fraction


def P(*cs):
    return IntPolynomial(cs)


# -- Newton polygons -------------------------------------------------------


def test_polygon_examples():
    assert newton_polygon(P(32, -2, 1), 2).root_valuations() == [1, 4]
    assert newton_polygon(P(9, 0, 1), 3).root_valuations() == [1, 1]
    # oracle: hull of (0,2), (1,0), (2,0)
    np = newton_polygon(P(9, -1, 1), 3)
    assert np.vertices == ((0, 2), (1, 0), (2, 0))
    assert np.root_valuations() == [0, 2]


def test_polygon_rejects_zero_constant():
    with pytest.raises(ValueError, match="zero roots"):
        newton_polygon(P(0, 1, 1), 5)
    with pytest.raises(ValueError):
        newton_polygon(P(3, 1, 2), 5)  # not monic


def test_polygon_fractional_slope():
    np = newton_polygon(P(-3, 0, 1), 3)
    assert np.segments == ((F(1, 2), 2),)


def test_polygon_sum_rule_random():
    rng = random.Random(17)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(1, 400)] + [
            rng.randint(-400, 400) for _ in range(deg - 1)
        ] + [1]
        poly = IntPolynomial(coeffs)
        np = newton_polygon(poly, p)
        # sum of valuations = v_p(constant term)
        assert sum(v * l for v, l in np.segments) == v_p(coeffs[0], p)
        assert sum(l for _, l in np.segments) == deg


# -- Witt model ------------------------------------------------------------


def test_witt_model_modulus_and_frobenius():
    w = WittRingModel(3, 2, 2)
    assert w.modulus == (1, 0, 1)
    t = w.from_coords([0, 1])
    # t^3 = -t mod (t^2+1): the Frobenius fixed point
    assert witt_frobenius(w, t) == w.from_coords([0, -1])
    assert witt_frobenius(w, w.one()) == w.one()


def test_witt_sigma_order_and_multiplicativity():
    w = WittRingModel(2, 5, 6)
    rng = random.Random(3)
    for _ in range(10):
        a = w.from_coords([rng.randrange(64) for _ in range(5)])
        b = w.from_coords([rng.randrange(64) for _ in range(5)])
        assert w.sigma(w.mul(a, b)) == w.mul(w.sigma(a), w.sigma(b))
        assert w.sigma(w.add(a, b)) == w.add(w.sigma(a), w.sigma(b))
        s = a
        for _ in range(5):
            s = w.sigma(s)
        assert s == a
        # sigma is p-th power mod p
        assert [c % 2 for c in w.sigma(a)] == [c % 2 for c in w.mul(a, a)]


def test_witt_inverse():
    w = WittRingModel(3, 3, 5)
    u = w.from_coords([2, 1, 1])
    assert w.mul(u, w.inv(u)) == w.one()
    with pytest.raises(ZeroDivisionError):
        w.inv(w.from_int(3))


# -- Hensel splitting ------------------------------------------------------


def test_hensel_split_examples():
    assert hensel_split(P(0, 1, 1), [[0, 1], [1, 1]], 3, 2) == [[0, 1], [1, 1]]
    assert hensel_split(P(-1, 0, 1), [[6, 1], [1, 1]], 7, 2) == [[48, 1], [1, 1]]
    # exact parts at full precision, congruent mod 5
    out = hensel_split(P(6, -7, 1), [[-1, 1], [-6, 1]], 5, 2)
    assert out == [[24, 1], [19, 1]]
    prod = [1]
    from weilkit.hensel import _mul_mod

    for f in out:
        prod = _mul_mod(f, prod, 25)
    assert prod == [6, 18, 1]  # x^2 - 7x + 6 mod 25


def test_hensel_split_rejects_noncoprime():
    # congruent parts that do not multiply back exactly are refused
    with pytest.raises(ValueError, match="coprime"):
        hensel_split(P(1, 2, 1), [[2, 1], [2, 1]], 3, 3)
    # congruent parts multiplying back exactly are passed through
    assert hensel_split(P(1, 2, 1), [[1, 1], [1, 1]], 3, 3) == [[1, 1], [1, 1]]


def test_hensel_split_random_reconstruction():
    rng = random.Random(23)
    from weilkit.hensel import _mul_mod

    for _ in range(40):
        p = rng.choice([2, 3, 5])
        k = rng.randint(2, 6)
        # random monic coprime-mod-p pair
        g = [rng.randrange(p ** k) for _ in range(rng.randint(1, 3))] + [1]
        h = [rng.randrange(p ** k) for _ in range(rng.randint(1, 3))] + [1]
        from weilkit import gfpoly as gp

        if len(gp.gf_gcd([c % p for c in g], [c % p for c in h], p)) != 1:
            continue
        f = _mul_mod(g, h, p ** k)
        lifted = hensel_split(f, [[c % p for c in g], [c % p for c in h]], p, k)
        prod = [1]
        for piece in lifted:
            prod = _mul_mod(piece, prod, p ** k)
        assert prod == f
        for piece, part in zip(lifted, [g, h]):
            assert [c % p for c in piece] == [c % p for c in part]


# -- place decomposition ---------------------------------------------------


def places_tuple(poly, p, r, **kw):
    return [
        (pl.e, pl.f, pl.root_valuation, pl.invariant)
        for pl in decompose_places(poly, p, r, **kw)
    ]


def test_places_spec_examples():
    assert places_tuple(P(9, 0, 1), 3, 2) == [(1, 2, F(1), F(0))]
    assert places_tuple(P(32, -2, 1), 2, 5) == [
        (1, 1, F(1), F(1, 5)),
        (1, 1, F(4), F(4, 5)),
    ]
    # Eisenstein: totally ramified
    assert places_tuple(P(-3, 0, 1), 3, 1) == [(2, 1, F(1, 2), F(0))]


def test_places_refinement_cases():
    # segments with repeated linear residual factors force one refinement
    assert places_tuple(P(9, 3, 1), 3, 2) == [(2, 1, F(1), F(0))]
    assert places_tuple(P(9, -3, 1), 3, 2) == [(2, 1, F(1), F(0))]
    assert places_tuple(P(4, 0, 1), 2, 2) == [(2, 1, F(1), F(0))]
    assert places_tuple(P(4, 2, 1), 2, 2) == [(1, 2, F(1), F(0))]


def test_places_degree_one():
    assert places_tuple(P(-3, 1), 3, 2) == [(1, 1, F(1), F(1, 2))]
    assert places_tuple(P(4, 1), 2, 4) == [(1, 1, F(2), F(1, 2))]


def test_places_ordinary_split():
    assert places_tuple(P(9, -1, 1), 3, 2) == [
        (1, 1, F(0), F(0)),
        (1, 1, F(2), F(0)),
    ]


def test_places_inert_unramified_quartic():
    # x^4 - 2x^2 + 4: all roots of 2-adic valuation 1/2, residual irreducible
    assert places_tuple(P(4, 0, -2, 0, 1), 2, 1) == [(2, 2, F(1, 2), F(0))]


def test_places_precision_stability():
    """Raising the working precision never changes (e, f, val, inv)."""
    from fractions import Fraction as Fr

    from weilkit.padic import _analyze

    for poly, p, r in [(P(9, 3, 1), 3, 2), (P(32, -2, 1), 2, 5), (P(4, 0, 1), 2, 2)]:
        base = places_tuple(poly, p, r)
        k = default_precision(poly, p, r)
        assert k >= 4
        results = []
        for cap in (k, k + 2, 2 * k):
            triples = []
            _analyze(list(poly.coeffs), p, cap, Fr(0), 0, Fr(r, 2), triples)
            results.append(sorted(triples))
        assert results[0] == results[1] == results[2]


def test_places_overrides():
    key = (9, 3, 1)
    table = {((9, 3, 1), 3): [(2, 1, F(1))]}
    assert places_tuple(P(*key), 3, 2, overrides=table) == [(2, 1, F(1), F(0))]
    bad = {((9, 3, 1), 3): [(1, 1, F(1))]}
    with pytest.raises(IrregularPlacesError):
        places_tuple(P(*key), 3, 2, overrides=bad)


def test_make_place_invariant():
    pl = make_place(1, 1, F(4), 5)
    assert pl.invariant == F(4, 5)
    pl = make_place(2, 1, F(1, 2), 1)
    assert pl.invariant == 0
    pl = make_place(1, 1, F(1), 2)
    assert pl.invariant == F(1, 2)


def test_load_overrides_file(tmp_path):
    import json

    from weilkit.padic import load_overrides

    path = tmp_path / "ov.json"
    path.write_text(
        json.dumps(
            [
                {
                    "poly": [9, 3, 1],
                    "p": 3,
                    "places": [{"e": 2, "f": 1, "val_num": 1, "val_den": 1}],
                }
            ]
        )
    )
    table = load_overrides(str(path))
    assert ((9, 3, 1), 3) in table
    assert places_tuple(P(9, 3, 1), 3, 2, overrides=table) == [
        (2, 1, F(1), F(0))
    ]
