"""Walk through the supersingular elliptic class pi = 3i over F_9.

Every number printed here is computed exactly, and the script narrates why
each one matters: the endomorphism algebra is just Q(i), so the class looks
commutative rationally, yet no single elliptic curve represents the module
category; one needs the 2-dimensional object glued from the two lattice
classes, whose endomorphism ring is a non-maximal order in M_2(Q(i)).

Run: python3 demos/supersingular_walkthrough.py
"""

from fractions import Fraction

from weilkit import (
    GlobalContext,
    IntPolynomial,
    build_order,
    endomorphism_order,
    glued_lattice,
    honda_tate_record,
    index_in,
    lattice_class_count,
    validate_weil,
    verify_psi_relations,
    weil_set,
)
from weilkit.supersingular import center_index_in_gaussian_scalars

p = 3
ctx = GlobalContext.from_q(p * p)
cls = validate_weil(IntPolynomial((p * p, 0, 1)), ctx)
print("class: %s over F_%d" % (cls.polynomial, ctx.q))

rec = honda_tate_record(cls)
print("slope type:", rec.slope_kind)
print("places above p:", [(pl.e, pl.f, str(pl.root_valuation)) for pl in rec.places])
print("all local invariants trivial -> index s =", rec.s)
print("dimension of the simple object:", rec.dim)
print("multiplicities: m = %d, reduced = %d" % (rec.multiplicity, rec.reduced_multiplicity))

# the minimal central order Z[ip] sits with index p in the Gaussian integers
order_r = build_order(weil_set([cls]))
gaussian_basis = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1, p)]]
print("index of Z[%di] in Z[i]:" % p, index_in(order_r, gaussian_basis))

# the 2x2 matrix model over Z[i]
verify_psi_relations(p)
print("matrix relations for the Frobenius/Verschiebung pair verified")

count, proper = lattice_class_count(p)
print("lattice homothety classes in the standard module:", count)
print("the unique proper stable subspace:", proper[0])

glued = glued_lattice(p)
print(
    "fiber product of the two lattices: index %d, Witt colength %d"
    % (glued.index, glued.witt_colength)
)

s_pi, center = endomorphism_order(p)
print("endomorphism order: index %d in M_2(Z[i])" % s_pi.index)
print("its defining congruence:", s_pi.description)
print("center has index %d in Z[i], i.e. the center is Z[%di]" % (
    center_index_in_gaussian_scalars(center, p), p))
