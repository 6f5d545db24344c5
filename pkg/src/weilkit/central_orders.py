"""The minimal central order R_w.

R_w is realized as a lattice inside Q[x]/(P_w) with F acting as x and V as
q/x.  The basis follows the parity of deg(w): F^d ... F, 1, V ... V^(d-1)
in the even case and F^(d0) ... 1 ... V^(d0) in the odd case (even r with
exactly one rational class).  The multiplication table has integer entries,
which is verified at construction, as are the defining relations F V = q
and the vanishing of the symmetric polynomial of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intmatrix import IntegerMatrix, elementary_divisors
from .intpoly import IntPolynomial
from .weil import SymmetricPolynomial, WeilSet, weil_set


def _poly_mod(vec, poly):
    """Reduce a Fraction coefficient vector modulo the monic poly."""
    vec = list(vec)
    d = poly.degree
    while len(vec) > d:
        top = vec.pop()
        if top:
            for i in range(d):
                vec[-d + i] -= top * poly.coeffs[i]
    vec += [Fraction(0)] * (d - len(vec))
    return vec


def _mul_mod(a, b, poly):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, poly)


def _x_inverse(poly):
    """Coefficient vector of x^(-1) mod poly (nonzero constant term)."""
    c0 = poly.coeffs[0]
    # x * u = 1 with u = -(P - c0)/(x * c0)
    u = [Fraction(-poly.coeffs[i + 1], c0) for i in range(poly.degree)]
    return _poly_mod(u, poly)


def _invert_matrix(rows):
    d = len(rows)
    a = [
        [Fraction(c) for c in row]
        + [Fraction(1 if i == j else 0) for j in range(d)]
        for i, row in enumerate(rows)
    ]
    for col in range(d):
        piv = next((i for i in range(col, d) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular basis matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [c * inv for c in a[col]]
        for i in range(d):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [c - f * x for c, x in zip(a[i], a[col])]
    return [row[d:] for row in a]


@dataclass(frozen=True)
class CentralOrder:
    weil_set: WeilSet
    basis_labels: tuple
    basis_vectors: tuple  # rows of Fractions, coordinates in Q[x]/(P_w)
    table: tuple  # integer 3-tensor: table[i][j] = coords of b_i b_j

    @property
    def rank(self):
        return len(self.basis_labels)

    def element_coords(self, vec):
        """Coordinates of a power-basis Fraction vector in the order basis."""
        inv = _invert_matrix([list(r) for r in self.basis_vectors])
        d = self.rank
        return [
            sum(Fraction(vec[j]) * inv[j][i] for j in range(d)) for i in range(d)
        ]

    def multiply(self, a, b):
        """Product in order coordinates via the integer table."""
        d = self.rank
        out = [0] * d
        for i in range(d):
            if a[i]:
                for j in range(d):
                    if b[j]:
                        c = a[i] * b[j]
                        row = self.table[i][j]
                        for t in range(d):
                            out[t] += c * row[t]
        return out

    def evaluate_symmetric(self, h):
        """Evaluate a symmetric F/V polynomial with integer exponents via the
        table; returns order coordinates."""
        d = self.rank
        f = self._coords_of_label("F")
        v = self._coords_of_label("V")
        one = self._unit_coords()
        out = [0] * d
        for (i, j), c in h.support.items():
            if i % 2 or j % 2:
                raise ValueError("half powers need the rational-class relation")
            term = one
            for _ in range(i // 2):
                term = self.multiply(term, f)
            for _ in range(j // 2):
                term = self.multiply(term, v)
            out = [o + c * t for o, t in zip(out, term)]
        return out

    def _unit_coords(self):
        one = [Fraction(0)] * self.rank
        one[0] = Fraction(1)
        return [int(c) for c in self.element_coords(one)]

    def _coords_of_label(self, name):
        poly = self.weil_set.polynomial
        if name == "F":
            vec = _poly_mod([Fraction(0), Fraction(1)], poly)
        else:
            q = self.weil_set.context.q
            vec = [q * c for c in _x_inverse(poly)]
        coords = self.element_coords(vec)
        out = []
        for c in coords:
            assert c.denominator == 1
            out.append(int(c))
        return out

    def as_dict(self):
        return {
            "q": self.weil_set.context.q,
            "polys": [list(c.polynomial.coeffs) for c in self.weil_set.classes],
            "basis_labels": list(self.basis_labels),
            "mult_table": [
                [[int(c) for c in cell] for cell in row] for row in self.table
            ],
        }


def build_order(w):
    """Construct R_w with verified closure and defining relations."""
    poly = w.polynomial
    deg = poly.degree
    q = w.context.q
    xinv = _x_inverse(poly)
    v_vec = [q * c for c in xinv]

    def f_power(k):
        vec = [Fraction(0)] * deg
        if k == 0:
            vec[0] = Fraction(1)
            return vec
        out = [Fraction(1)]
        x = [Fraction(0), Fraction(1)]
        for _ in range(k):
            out = _mul_mod(out, x, poly)
        return _poly_mod(out, poly)

    def v_power(k):
        out = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        for _ in range(k):
            out = _mul_mod(out, v_vec, poly)
        return out

    labels = []
    vectors = []
    if deg % 2 == 0:
        d = deg // 2
        for k in range(d, 0, -1):
            labels.append("F^%d" % k if k > 1 else "F")
            vectors.append(f_power(k))
        labels.append("1")
        vectors.append(f_power(0))
        for k in range(1, d):
            labels.append("V^%d" % k if k > 1 else "V")
            vectors.append(v_power(k))
    else:
        d0 = deg // 2
        for k in range(d0, 0, -1):
            labels.append("F^%d" % k if k > 1 else "F")
            vectors.append(f_power(k))
        labels.append("1")
        vectors.append(f_power(0))
        for k in range(1, d0 + 1):
            labels.append("V^%d" % k if k > 1 else "V")
            vectors.append(v_power(k))

    inv = _invert_matrix(vectors)  # injectivity of the embedding

    def coords(vec):
        return [
            sum(vec[j] * inv[j][i] for j in range(deg)) for i in range(deg)
        ]

    table = []
    for i in range(deg):
        row = []
        for j in range(deg):
            prod = _mul_mod(vectors[i], vectors[j], poly)
            cs = coords(prod)
            ints = []
            for c in cs:
                assert c.denominator == 1, "order not multiplicatively closed"
                ints.append(int(c))
            row.append(tuple(ints))
        table.append(tuple(row))

    order = CentralOrder(
        weil_set=w,
        basis_labels=tuple(labels),
        basis_vectors=tuple(tuple(v) for v in vectors),
        table=tuple(table),
    )
    _verify_relations(order)
    return order


def _verify_relations(order):
    w = order.weil_set
    q = w.context.q
    f = order._coords_of_label("F")
    v = order._coords_of_label("V")
    one = order._unit_coords()
    fv = order.multiply(f, v)
    assert fv == [q * c for c in one], "F V = q fails"
    h = w.h
    if all(i % 2 == 0 and j % 2 == 0 for (i, j) in h.support):
        res = order.evaluate_symmetric(h)
        assert all(c == 0 for c in res), "h_w(F, V) = 0 fails"
    else:
        # odd case: h_w has half powers; the defining relations are
        # h_w0(F, V) (F - eps p^m) = 0 and its V-twin
        rational = [c for c in w.classes if c.is_rational]
        others = [c for c in w.classes if not c.is_rational]
        assert len(rational) == 1
        ctx = w.context
        eps_root = -rational[0].polynomial.coeffs[0]
        if others:
            h0 = weil_set(others).h
            h0_val = order.evaluate_symmetric(h0)
        else:
            h0_val = order._unit_coords()
        f = order._coords_of_label("F")
        v = order._coords_of_label("V")
        one = order._unit_coords()
        f_minus = [a - eps_root * b for a, b in zip(f, one)]
        v_minus = [a - eps_root * b for a, b in zip(v, one)]
        assert all(c == 0 for c in order.multiply(h0_val, f_minus))
        assert all(c == 0 for c in order.multiply(h0_val, v_minus))


def index_in(order, overorder_vectors):
    """Index of the order inside the lattice spanned by `overorder_vectors`
    (rows of rationals in Q[x]/(P_w) coordinates).

    Both must span the same Q-vector space; the index is the absolute
    determinant of the change of basis, a positive integer when the order is
    actually contained in the overorder.
    """
    d = order.rank
    over = [list(map(Fraction, row)) for row in overorder_vectors]
    if len(over) != d:
        raise ValueError("overorder basis has wrong rank")
    inv = _invert_matrix(over)
    change = []
    for row in order.basis_vectors:
        change.append(
            [sum(Fraction(row[j]) * inv[j][i] for j in range(d)) for i in range(d)]
        )
    det = _fraction_det(change)
    if det == 0:
        raise ValueError("bases span different spaces")
    det = abs(det)
    if det.denominator != 1:
        raise ValueError("order is not contained in the overorder")
    return int(det)


def _fraction_det(rows):
    d = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(d):
        piv = next((i for i in range(col, d) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [c * inv for c in a[col]]
        for i in range(col + 1, d):
            if a[i][col]:
                f = a[i][col]
                a[i] = [c - f * x for c, x in zip(a[i], a[col])]
    return det


def quotient_map(w_small, w_big):
    """Matrix of the natural surjection R_{w_big} -> R_{w_small} on the
    chosen bases; entries are integers and the elementary divisors are all 1."""
    small_polys = {c.polynomial.coeffs for c in w_small.classes}
    big_polys = {c.polynomial.coeffs for c in w_big.classes}
    if not small_polys <= big_polys:
        raise ValueError("first set must be contained in the second")
    order_small = build_order(w_small)
    order_big = build_order(w_big)
    p_small = w_small.polynomial
    cols = []
    for vec in order_big.basis_vectors:
        reduced = _poly_mod(list(vec), p_small)
        coords = order_small.element_coords(reduced)
        col = []
        for c in coords:
            assert c.denominator == 1, "image outside the small order"
            col.append(int(c))
        cols.append(col)
    matrix = IntegerMatrix([[cols[j][i] for j in range(len(cols))]
                            for i in range(order_small.rank)])
    divisors = [d for d in elementary_divisors(matrix) if d != 0]
    assert len(divisors) == order_small.rank and all(
        d == 1 for d in divisors
    ), "quotient map not surjective"
    return matrix


def product_embedding_index(cls_a, cls_b):
    """Index of R_{{a,b}} inside R_a x R_b under the CRT identification of
    Q[x]/(P_a P_b) with the product of the two fields."""
    pair = weil_set([cls_a, cls_b])
    order_pair = build_order(pair)
    poly_a, poly_b = cls_a.polynomial, cls_b.polynomial
    poly = pair.polynomial
    # CRT idempotent e_a: 1 mod P_a, 0 mod P_b
    g, u, v = _poly_xgcd(poly_a, poly_b)
    assert g.degree == 0, "classes share a factor"
    c = Fraction(1, g.coeffs[0])
    # e_a = v * P_b / g evaluated mod P
    e_a = _poly_mod([c * x for x in _poly_mul_list(v, poly_b)], poly)
    e_b = [Fraction(int(i == 0)) - x for i, x in enumerate(e_a)]
    order_a = build_order(weil_set([cls_a]))
    order_b = build_order(weil_set([cls_b]))
    prod_rows = []
    deg = poly.degree
    for vec in order_a.basis_vectors:
        lifted = _poly_mod(
            _mul_mod([Fraction(x) for x in _pad(vec, deg)], e_a, poly), poly
        )
        prod_rows.append(lifted)
    for vec in order_b.basis_vectors:
        lifted = _poly_mod(
            _mul_mod([Fraction(x) for x in _pad(vec, deg)], e_b, poly), poly
        )
        prod_rows.append(lifted)
    return index_in(order_pair, prod_rows)


def _pad(vec, n):
    out = list(vec) + [Fraction(0)] * (n - len(vec))
    return out


def _poly_mul_list(a, b):
    out = [Fraction(0)] * (len(a) + len(b.coeffs) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return out


def _poly_xgcd(a, b):
    """Extended gcd over Q for IntPolynomials: g, u, v with u a + v b = g."""
    r0 = [Fraction(c) for c in a.coeffs]
    r1 = [Fraction(c) for c in b.coeffs]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def strip(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    def sub_scaled(x, y, q_, shift):
        x = list(x) + [Fraction(0)] * max(0, len(y) + shift - len(x))
        for i, c in enumerate(y):
            x[i + shift] -= q_ * c
        return strip(x)

    while r1:
        q_list = []
        r = list(r0)
        while len(r) >= len(r1) and r:
            qc = r[-1] / r1[-1]
            shift = len(r) - len(r1)
            q_list = [Fraction(0)] * max(0, shift + 1 - len(q_list)) + q_list
            if len(q_list) < shift + 1:
                q_list += [Fraction(0)] * (shift + 1 - len(q_list))
            q_list[shift] += qc
            r = sub_scaled(r, r1, qc, shift)
        r0, r1 = r1, r
        new_s = list(s0)
        new_t = list(t0)
        for shift, qc in enumerate(q_list):
            if qc:
                new_s = sub_scaled(new_s, s1, qc, shift)
                new_t = sub_scaled(new_t, t1, qc, shift)
        s0, s1 = s1, new_s
        t0, t1 = t1, new_t
    lead = r0[-1]
    g_coeffs = [c / lead for c in r0]
    assert all(c.denominator == 1 for c in g_coeffs), "gcd not monic-integral"
    g_int = IntPolynomial([int(c) for c in g_coeffs])
    u = [c / lead for c in s0]
    v = [c / lead for c in t0]
    return g_int, u, v


def connected_components(w):
    """Partition of the classes of w by connectivity of Spec(R_w): two
    classes lie in one component iff the index of R_{{a,b}} inside
    R_a x R_b is not 1."""
    classes = list(w.classes)
    n = len(classes)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if product_embedding_index(classes[i], classes[j]) != 1:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(classes[i])
    out = [tuple(sorted(g, key=lambda c: c.sort_key())) for g in groups.values()]
    out.sort(key=lambda g: g[0].sort_key())
    return out


def supersingular_point_test(order):
    """Is (F, V, p) the unit ideal in R_w/pR_w?  True exactly when every
    class of w is ordinary; otherwise the quotient by (F, V, p) is F_p."""
    p = order.weil_set.context.p
    d = order.rank
    f = order._coords_of_label("F")
    v = order._coords_of_label("V")
    rows = []
    for i in range(d):
        e = [1 if j == i else 0 for j in range(d)]
        rows.append([c % p for c in order.multiply(f, e)])
        rows.append([c % p for c in order.multiply(v, e)])
    from .intmatrix import rref_mod_p

    ech, piv = rref_mod_p(rows, p)
    return len(ech) == d, d - len(ech)
