"""Finite-precision p-adic tools: Newton polygons, a Witt-vector model of
the unramified extension W(F_{p^r})/p^k with its Frobenius, Hensel
splitting, and decomposition of an irreducible Weil-class polynomial into
p-adic place data (ramification e, inertia f, root valuation, local
invariant).

Valuations are normalized with v(p) = 1 and kept as exact Fractions.  The
place decomposition runs the classical Newton-polygon/residual-polynomial
method with at most one refinement round (integral slope, repeated linear
residual factor); anything deeper raises IrregularPlacesError carrying the
partial data, and a user-supplied override table can stand in for such
classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import gfpoly as gp
from .hensel import lift_factorization
from .intpoly import IntPolynomial, discriminant, is_squarefree


class IrregularPlacesError(Exception):
    """Raised when one refinement round cannot separate the places.

    Carries the input, the places recovered so far, and a description of the
    offending polygon segment so an override can be prepared.
    """

    def __init__(self, message, poly=None, p=None, partial=(), detail=""):
        super().__init__(message)
        self.poly = poly
        self.p = p
        self.partial = tuple(partial)
        self.detail = detail


class _PrecisionLoss(Exception):
    pass


def v_p(n, p):
    """Exact p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicContext:
    p: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("positive precision required")

    @property
    def modulus(self):
        return self.p ** self.precision


# -- Newton polygons -----------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of p-adic coefficient valuations.

    `vertices` are the hull lattice points (index, valuation) left to right;
    `segments` lists (root_valuation, length) pairs, root valuations
    decreasing along the hull (they are the negated slopes).
    """

    vertices: tuple
    segments: tuple

    def root_valuations(self):
        """Multiset of root valuations as a sorted list with multiplicity."""
        out = []
        for val, length in self.segments:
            out.extend([val] * length)
        return sorted(out)


def _lower_hull(points):
    """Lower convex hull of (x, y) points with strictly increasing x."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if pt is below or on the line hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(poly, p):
    """Newton polygon of a monic integer polynomial with p-unit leading term.

    Requires a nonzero constant term: zero roots have no finite valuation.
    """
    if poly.is_zero or not poly.is_monic:
        raise ValueError("monic polynomial required")
    if poly.coeffs[0] == 0:
        raise ValueError("remove zero roots first")
    pts = []
    for i, c in enumerate(poly.coeffs):
        if c != 0:
            pts.append((i, v_p(c, p)))
    return _polygon_from_points(pts)


def _polygon_from_points(pts):
    hull = _lower_hull(pts)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        val = Fraction(y1 - y2, x2 - x1)
        segments.append((val, x2 - x1))
    return NewtonPolygon(tuple(hull), tuple(segments))


# -- Witt-vector model of W(F_q) at finite precision ----------------------


class WittRingModel:
    """(Z/p^k)[t]/(m(t)) with m monic of degree r, irreducible mod p, and a
    Hensel-lifted Frobenius sigma with sigma(t) = t^p (mod p).

    Elements are tuples of r integers mod p^k (coordinates in the power
    basis of t).  The modulus is the lexicographically smallest monic
    irreducible of its degree, making models reproducible without a table.
    """

    def __init__(self, p, r, k):
        if r < 1 or k < 1:
            raise ValueError("need r >= 1 and k >= 1")
        self.p = p
        self.r = r
        self.k = k
        self.pk = p ** k
        self.modulus = tuple(gp.lexicographically_smallest_irreducible(p, r))
        self._red = self._reduction_table()
        self.frobenius_image = self._lift_frobenius()
        self._sigma_mats = self._sigma_matrices()

    # elements are tuples of length r with entries in [0, p^k)

    def zero(self):
        return (0,) * self.r

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return (n % self.pk,) + (0,) * (self.r - 1)

    def from_coords(self, cs):
        cs = list(cs)
        if len(cs) > self.r:
            raise ValueError("too many coordinates")
        cs += [0] * (self.r - len(cs))
        return tuple(c % self.pk for c in cs)

    def add(self, a, b):
        return tuple((x + y) % self.pk for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.pk for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.pk for x in a)

    def scal(self, c, a):
        return tuple((c * x) % self.pk for x in a)

    def _reduction_table(self):
        # t^j mod (m, p^k) for j in [r, 2r-2]
        red = {}
        m = self.modulus
        cur = [(-m[i]) % self.pk for i in range(self.r)]  # t^r
        red[self.r] = tuple(cur)
        for j in range(self.r + 1, 2 * self.r - 1):
            top = cur[-1]
            cur = [0] + cur[:-1]
            for i in range(self.r):
                cur[i] = (cur[i] - top * m[i]) % self.pk
            red[j] = tuple(cur)
        return red

    def mul(self, a, b):
        r = self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.pk
        out = list(prod[:r])
        for j in range(r, 2 * r - 1):
            c = prod[j]
            if c:
                rj = self._red[j]
                for i in range(r):
                    out[i] = (out[i] + c * rj[i]) % self.pk
        return tuple(out)

    def pow(self, a, n):
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def poly_eval(self, coeffs, a):
        """Evaluate an integer-coefficient polynomial at a ring element."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.mul(acc, a)
            acc = self.add(acc, self.from_int(c))
        return acc

    def is_unit(self, a):
        return any(c % self.p for c in a)

    def inv(self, a):
        """Inverse of a unit, by mod-p inversion plus Newton lifting."""
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit")
        a_p = [c % self.p for c in a]
        m_p = [c % self.p for c in self.modulus]
        # xgcd over F_p[t]
        inv_p = _gf_inverse(a_p, m_p, self.p)
        x = self.from_coords(inv_p)
        # x <- x(2 - a x), doubling correct digits
        prec = 1
        while prec < self.k:
            ax = self.mul(a, x)
            two_minus = self.sub(self.from_int(2), ax)
            x = self.mul(x, two_minus)
            prec *= 2
        return x

    def _lift_frobenius(self):
        # root of the modulus congruent to t^p mod p, by Newton iteration
        t = self.from_coords([0, 1] if self.r > 1 else [0])
        if self.r == 1:
            return self.from_int(0)  # t is absent; sigma is identity on Z_p
        y = self.pow(t, self.p)
        m = list(self.modulus)
        dm = [(i * m[i]) % self.pk for i in range(1, len(m))]
        prec = 1
        while prec < self.k:
            fy = self.poly_eval(m, y)
            dfy = self.poly_eval(dm, y)
            y = self.sub(y, self.mul(fy, self.inv(dfy)))
            prec *= 2
        assert self.poly_eval(m, y) == self.zero(), "Frobenius lift failed"
        return y

    def _sigma_matrices(self):
        """Coordinate matrices of sigma^i for i in [0, r)."""
        if self.r == 1:
            return [((1,),)]
        mats = []
        # sigma: t^j -> frobenius_image^j
        cols = []
        for j in range(self.r):
            cols.append(self.pow(self.frobenius_image, j))
        mat1 = tuple(tuple(cols[j][i] for j in range(self.r)) for i in range(self.r))
        ident = tuple(
            tuple(1 if i == j else 0 for j in range(self.r)) for i in range(self.r)
        )
        mats.append(ident)
        cur = ident
        for _ in range(1, self.r):
            cur = self._mat_mul(mat1, cur)
            mats.append(cur)
        return mats

    def _mat_mul(self, a, b):
        r = self.r
        return tuple(
            tuple(
                sum(a[i][l] * b[l][j] for l in range(r)) % self.pk for j in range(r)
            )
            for i in range(r)
        )

    def sigma(self, a, power=1):
        """Arithmetic Frobenius sigma^power applied to a ring element."""
        mat = self._sigma_mats[power % self.r]
        return tuple(
            sum(mat[i][j] * a[j] for j in range(self.r)) % self.pk
            for i in range(self.r)
        )

    def truncate(self, a, k2):
        """Reduce coordinates mod p^k2 (k2 <= k)."""
        q = self.p ** k2
        return tuple(c % q for c in a)

    def val(self, a):
        """Min valuation of the coordinates, capped at k."""
        v = self.k
        for c in a:
            if c:
                v = min(v, v_p(c, self.p))
        return v


def _gf_inverse(a, m, p):
    r0, r1 = list(m), gp.gf_normal(list(a), p)
    s0, s1 = [], [1]
    while r1:
        q, r = gp.gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gp.gf_sub(s0, gp.gf_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("not invertible")
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0]


def witt_frobenius(model, a):
    """The arithmetic Frobenius of the Witt model applied to an element."""
    return model.sigma(a)


def hensel_split(poly, parts, p, k):
    """Lift a coprime mod-p factorization of a monic polynomial to mod p^k.

    `poly` may be an IntPolynomial or a coefficient list; `parts` are
    coefficient lists (constant first).  Parts that fail to be coprime
    mod p are accepted only when they already multiply to the input mod p^k.
    """
    coeffs = list(poly.coeffs) if isinstance(poly, IntPolynomial) else list(poly)
    return lift_factorization(coeffs, parts, p, k)


# -- place decomposition ---------------------------------------------------


@dataclass(frozen=True)
class PlaceAboveP:
    """One p-adic place of the field of a Weil class.

    e, f are ramification and inertia; root_valuation is v_p(pi) with
    v(p) = 1; degree = e*f; invariant is the local Brauer invariant of the
    endomorphism algebra, an exact fraction in [0, 1).
    """

    e: int
    f: int
    root_valuation: Fraction
    invariant: Fraction

    @property
    def degree(self):
        return self.e * self.f

    def as_dict(self):
        return {
            "e": self.e,
            "f": self.f,
            "val": [self.root_valuation.numerator, self.root_valuation.denominator],
            "inv": [self.invariant.numerator, self.invariant.denominator],
        }


def make_place(e, f, root_valuation, r):
    val = Fraction(root_valuation)
    inv = (val * e * f / r) % 1
    return PlaceAboveP(e, f, val, inv)


def default_precision(poly, p, r):
    """Working precision: generous enough to separate Hensel factors."""
    vd = v_p(discriminant(poly), p) if is_squarefree(poly) else 0
    return 2 * (r * poly.degree + vd) + 4


def _starting_precision(poly, p, r):
    """Cheap starting cap; the retry loop raises it on demand and every
    polygon/residual conclusion is precision-checked, so starting low is
    safe and avoids a discriminant per call."""
    return 2 * r * poly.degree + v_p(abs(poly.coeffs[0]), p) + 6


def _poly_val(coeffs, p, cap):
    """(index, valuation) points of a mod-p^cap coefficient list; entries
    that vanish mod p^cap are treated as +infinity (omitted)."""
    pts = []
    mod = p ** cap
    for i, c in enumerate(coeffs):
        c %= mod
        if c:
            pts.append((i, v_p(c, p)))
    return pts


def _residual(coeffs, p, seg_left, seg_right, a, b):
    """Residual polynomial of the segment from seg_left to seg_right with
    slope -a/b, over F_p (constant first)."""
    (i0, v0), (i1, _v1) = seg_left, seg_right
    out = []
    for j in range((i1 - i0) // b + 1):
        idx = i0 + j * b
        target = v0 - j * a
        c = coeffs[idx] if idx < len(coeffs) else 0
        if c == 0:
            out.append(0)
            continue
        v = v_p(c, p)
        if v > target:
            out.append(0)
        else:
            out.append((c // p ** target) % p)
    return gp.gf_trim(out)


def _segments_of(coeffs, p, cap):
    """Hull segments [(a, b, length, left_pt, right_pt)] of a monic
    coefficient list taken mod p^cap."""
    pts = _poly_val(coeffs, p, cap)
    if not pts or pts[0][0] != 0:
        raise _PrecisionLoss("constant term lost at working precision")
    hull = _lower_hull(pts)
    if hull[-1][0] != len(coeffs) - 1:
        raise _PrecisionLoss("leading term lost at working precision")
    for _, v in hull:
        if v >= cap - 1:
            raise _PrecisionLoss("hull vertex at working precision")
    segs = []
    for left, right in zip(hull, hull[1:]):
        rise = left[1] - right[1]
        run = right[0] - left[0]
        g = gcd(rise, run)
        if rise == 0:
            a, b = 0, 1
        else:
            a, b = rise // g, run // g
        segs.append((a, b, run, left, right))
    return segs


def _shift_poly(coeffs, c, mod):
    """Substitute y + c into a coefficient-list polynomial, mod `mod`."""
    out = []
    for coef in reversed(coeffs):
        # out <- out*(y+c) + coef
        new = [0] * (len(out) + 1)
        for i, x in enumerate(out):
            new[i + 1] = (new[i + 1] + x) % mod
            new[i] = (new[i] + x * c) % mod
        new[0] = (new[0] + coef) % mod
        out = new
    return out


def _scale_down(coeffs, p, a, cap):
    """G(p^a y) / p^c with c chosen minimal; returns (scaled, c, new_cap)."""
    mod = p ** cap
    vals = [
        v_p(coef % mod, p) + a * j for j, coef in enumerate(coeffs) if coef % mod
    ]
    c = min(vals)
    if cap <= c:
        raise _PrecisionLoss("scaling exhausted precision")
    mod_out = p ** (cap - c)
    out = []
    for j, coef in enumerate(coeffs):
        num = (coef % mod) * p ** (a * j)
        assert num % p ** c == 0, "support line violated"
        out.append((num // p ** c) % mod_out)
    return out, c, cap - c


def _analyze(coeffs, p, cap, offset, depth, max_val, out):
    """Emit (e, f, valuation) triples for the roots of the monic coefficient
    list `coeffs` (all of nonnegative valuation), shifted by `offset`.
    Segments with offset + slope > max_val are skipped (the caller recovers
    them by conjugation symmetry).  `depth` counts refinement rounds."""
    if len(coeffs) - 1 <= 0:
        return
    segs = _segments_of(coeffs, p, cap)
    analysis = []
    problems = False
    for a, b, length, left, right in segs:
        s = Fraction(a, b)
        if offset + s > max_val:
            continue
        res = _residual(coeffs, p, left, right, a, b)
        _, factors = gp.factor(res, p)
        analysis.append((a, b, s, left, right, factors))
        if any(m > 1 for _, m in factors):
            problems = True
    if not problems:
        for a, b, s, left, right, factors in analysis:
            for irr, m in factors:
                assert m == 1
                out.append((b, len(irr) - 1, offset + s))
        return
    if depth >= 1:
        raise IrregularPlacesError(
            "refinement depth exhausted",
            partial=list(out),
            detail="repeated residual factor after one refinement",
        )
    # peel at the minimal-valuation segment; it is always in `analysis`
    # because the filter can only drop a suffix of the (decreasing) slopes
    a, b, length, left, right = min(segs, key=lambda t: Fraction(t[0], t[1]))
    s = Fraction(a, b)
    seg_factors = None
    for aa, bb, ss, l, _r, fs in analysis:
        if (aa, bb, l) == (a, b, left):
            seg_factors = fs
    assert seg_factors is not None, "minimal segment missing from analysis"
    if b != 1:
        raise IrregularPlacesError(
            "repeated residual factor on a non-integral slope",
            partial=list(out),
            detail="slope %s" % s,
        )
    scaled, _c, cap2 = _scale_down(coeffs, p, a, cap)
    # reduction mod p of scaled = y^{i0} * residual(y)
    i0 = left[0]
    parts = []
    if i0 > 0:
        parts.append([0] * i0 + [1])  # y^{i0}: the steeper-slope block
    pieces_meta = []
    for irr, m in seg_factors:
        piece = [1]
        for _ in range(m):
            piece = gp.gf_mul(piece, list(irr), p)
        parts.append(piece)
        pieces_meta.append((irr, m))
    if len(parts) == 1:
        lifted = [list(scaled)]
    else:
        lifted = lift_factorization(scaled, parts, p, cap2)
    idx = 0
    if i0 > 0:
        idx = 1
        _analyze(lifted[0], p, cap2, offset + a, depth, max_val, out)
    for (irr, m), factor_poly in zip(pieces_meta, lifted[idx:]):
        if m == 1:
            out.append((1, len(irr) - 1, offset + a))
            continue
        if len(irr) - 1 > 1:
            raise IrregularPlacesError(
                "repeated nonlinear residual factor",
                partial=list(out),
                detail="residual factor of degree %d with multiplicity %d"
                % (len(irr) - 1, m),
            )
        c0 = (-irr[0]) % p
        shifted = _shift_poly(factor_poly, c0, p ** cap2)
        # one refinement round: analyze with the valuation pinned to offset+a
        _analyze_refined(shifted, p, cap2, offset + a, out)


def _analyze_refined(coeffs, p, cap, pinned_val, out):
    """Second-round analysis: slopes of `coeffs` only determine (e, f); the
    root valuation of the original class is already pinned."""
    segs = _segments_of(coeffs, p, cap)
    for a, b, length, left, right in segs:
        res = _residual(coeffs, p, left, right, a, b)
        _, factors = gp.factor(res, p)
        for irr, m in factors:
            if m > 1:
                raise IrregularPlacesError(
                    "refinement depth exhausted",
                    partial=list(out),
                    detail="repeated residual factor after one refinement",
                )
            out.append((b, len(irr) - 1, pinned_val))


def _has_conjugation_symmetry(poly, q):
    """Does x^deg * P(q/x) equal +-q^(deg/2) * P(x)?  True for Weil classes,
    where the root multiset is stable under pi -> q/pi."""
    n = poly.degree
    if n % 2:
        return False
    d = n // 2
    lhs = [poly.coeffs[n - i] * q ** i for i in range(n + 1)]
    rhs = [c * q ** d for c in poly.coeffs]
    return lhs == rhs or lhs == [-c for c in rhs]


def decompose_places(poly, p, r, overrides=None):
    """All p-adic places of the number field of an irreducible Weil-class
    polynomial: returns a list of PlaceAboveP sorted by root valuation.

    The override table maps (coefficients, p) to explicit (e, f, valuation)
    triples for classes the one-round refinement cannot separate; entries
    are still checked against the degree and constant-term invariants.
    """
    if not poly.is_monic or poly.degree < 1:
        raise ValueError("monic nonconstant polynomial required")
    if poly.coeffs[0] == 0:
        raise ValueError("remove zero roots first")
    q = p ** r
    key = (tuple(poly.coeffs), p)
    if overrides and key in overrides:
        triples = overrides[key]
        places = [make_place(e, f, val, r) for e, f, val in triples]
        try:
            _check_place_sums(places, poly, p)
        except AssertionError as e:
            raise IrregularPlacesError(
                "override data failed invariant checks: %s" % e, poly=poly, p=p
            )
        return sorted(places, key=lambda pl: (pl.root_valuation, pl.f, pl.e))

    if poly.degree == 1:
        val = Fraction(v_p(poly.coeffs[0], p))
        places = [make_place(1, 1, val, r)]
        _check_place_sums(places, poly, p)
        return places

    symmetric = _has_conjugation_symmetry(poly, q)
    half = Fraction(r, 2)
    max_val = half if symmetric else Fraction(r * poly.degree)

    cap = _starting_precision(poly, p, r)
    last_err = None
    triples = None
    mirror = symmetric
    for _ in range(6):
        triples = []
        try:
            _analyze(list(poly.coeffs), p, cap, Fraction(0), 0, max_val, triples)
        except _PrecisionLoss as e:
            cap *= 2
            last_err = e
            continue
        except IrregularPlacesError:
            # one refinement round is not enough; switch to the independent
            # maximal-order route, which needs no mirroring
            from .padicorders import places_from_order

            triples = places_from_order(poly, p, r)
            mirror = False
        break
    else:
        raise IrregularPlacesError(
            "precision did not stabilize: %s" % last_err, poly=poly, p=p
        )

    places = [make_place(e, f, val, r) for e, f, val in triples]
    if mirror:
        mirrored = [
            make_place(pl.e, pl.f, r - pl.root_valuation, r)
            for pl in places
            if pl.root_valuation < half
        ]
        places.extend(mirrored)
    try:
        _check_place_sums(places, poly, p)
    except AssertionError as e:
        raise IrregularPlacesError(
            "place data failed invariant checks: %s" % e,
            poly=poly,
            p=p,
            partial=places,
        )
    return sorted(places, key=lambda pl: (pl.root_valuation, pl.f, pl.e))


def _check_place_sums(places, poly, p):
    total_deg = sum(pl.degree for pl in places)
    assert total_deg == poly.degree, "degrees sum to %d, expected %d" % (
        total_deg,
        poly.degree,
    )
    vsum = sum(Fraction(pl.degree) * pl.root_valuation for pl in places)
    expected = v_p(abs(poly.coeffs[0]), p)
    assert vsum == expected, "valuation sum %s, expected %s" % (vsum, expected)


# -- override files --------------------------------------------------------


def load_overrides(path):
    """Read an override file: JSON list of {poly, p, places:[{e,f,val_num,val_den}]}."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    table = {}
    for entry in data:
        key = (tuple(int(c) for c in entry["poly"]), int(entry["p"]))
        triples = [
            (
                int(pl["e"]),
                int(pl["f"]),
                Fraction(int(pl["val_num"]), int(pl["val_den"])),
            )
            for pl in entry["places"]
        ]
        table[key] = triples
    return table
