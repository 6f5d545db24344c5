"""Honda-Tate numerical invariants of Weil classes.

For a class pi this computes the local invariants of the endomorphism
algebra of the associated simple abelian variety, its index s (the lcm of
the invariant denominators, with 1/2 at each real place), the dimension
from 2*dim = s*deg, and the multiplicities m = 2r/s and, when defined,
m_reduced = r/s that make the localized module theory free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .intpoly import IntPolynomial
from .padic import decompose_places
from .weil import GlobalContext, WeilClass, slope_type, validate_weil


@dataclass(frozen=True)
class HondaTateRecord:
    weil_class: WeilClass
    places: tuple
    real_place_count: int
    s: int
    dim: int
    multiplicity: int
    reduced_multiplicity: int | None
    slope_kind: str

    def as_dict(self):
        ctx = self.weil_class.context
        return {
            "q": ctx.q,
            "p": ctx.p,
            "r": ctx.r,
            "poly": list(self.weil_class.polynomial.coeffs),
            "places": [pl.as_dict() for pl in self.places],
            "real_places": self.real_place_count,
            "s": self.s,
            "dim": self.dim,
            "m": self.multiplicity,
            "m_reduced": self.reduced_multiplicity,
            "slope_type": self.slope_kind,
        }


def honda_tate_record(cls, overrides=None):
    """Invariants of one Weil class; raises IrregularPlacesError when the
    place pipeline needs an override it was not given."""
    ctx = cls.context
    places = tuple(decompose_places(cls.polynomial, ctx.p, ctx.r, overrides=overrides))
    # non-real classes are totally imaginary; the real class x^2 - q has two
    # real embeddings and a rational class one
    if not cls.is_real:
        real_places = 0
    else:
        real_places = 1 if cls.degree == 1 else 2
    denoms = [pl.invariant.denominator for pl in places]
    if real_places:
        denoms.append(2)
    s = lcm(*denoms) if denoms else 1
    deg = cls.degree
    two_dim = s * deg
    assert two_dim % 2 == 0, "s*deg must be even"
    dim = two_dim // 2
    assert (2 * ctx.r) % s == 0, "s must divide 2r"
    m = 2 * ctx.r // s
    reduced = None
    if not (ctx.r % 2 == 1 and cls.is_real):
        assert ctx.r % s == 0, "s must divide r away from the odd real class"
        reduced = ctx.r // s
    kind, _vals = slope_type(cls)
    return HondaTateRecord(
        weil_class=cls,
        places=places,
        real_place_count=real_places,
        s=s,
        dim=dim,
        multiplicity=m,
        reduced_multiplicity=reduced,
        slope_kind=kind,
    )


def reciprocity_sum(record):
    """Sum of all local invariants including 1/2 per real place; an integer
    by Brauer reciprocity."""
    total = sum((pl.invariant for pl in record.places), Fraction(0))
    total += Fraction(record.real_place_count, 2)
    return total


def rank_of_hom_lattice(dim_x, ctx, reduced=False):
    """Z-rank of the lattice attached to a dim_x-dimensional object:
    4*r*dim, or 2*r*dim for the reduced variant."""
    if dim_x < 1:
        raise ValueError("positive dimension required")
    factor = 2 if reduced else 4
    return factor * ctx.r * dim_x


def commutative_classifier(classes):
    """Which commutative regime a family of classes falls into.

    'commutative_ordinary' when every class is ordinary,
    'commutative_p_nonreal' when r = 1 and no class is real,
    'noncommutative' otherwise.
    """
    classes = list(classes)
    if not classes:
        raise ValueError("nonempty family required")
    ctx = classes[0].context
    kinds = [slope_type(c)[0] for c in classes]
    if all(k == "ordinary" for k in kinds):
        return "commutative_ordinary"
    if ctx.r == 1 and not any(c.is_real for c in classes):
        return "commutative_p_nonreal"
    return "noncommutative"


@dataclass(frozen=True)
class GammaWitnesses:
    """Certificates that the rank constant is divisible by 2*lcm(r, 2)."""

    context: GlobalContext
    index_r_witness: HondaTateRecord | None
    index_two_witness: HondaTateRecord
    divisor: int
    note: str = ""


def gamma_witnesses(ctx):
    """Witness classes with s = r (when r > 2) and s = 2, certifying the
    divisor 2*lcm(r, 2) of any uniform rank constant."""
    divisor = 2 * lcm(ctx.r, 2)
    # s = 2 from the real class: x^2 - q for odd r, x -+ sqrt(q) for even r
    if ctx.r % 2:
        real_cls = validate_weil(IntPolynomial((-ctx.q, 0, 1)), ctx)
    else:
        real_cls = validate_weil(IntPolynomial((-ctx.p ** (ctx.r // 2), 1)), ctx)
    rec2 = honda_tate_record(real_cls)
    assert rec2.s == 2, "real witness must have index 2"
    if ctx.r <= 2:
        return GammaWitnesses(
            ctx, None, rec2, divisor, note="s = r witness needs r > 2"
        )
    witness = validate_weil(IntPolynomial((ctx.q, -ctx.p, 1)), ctx)
    rec_r = honda_tate_record(witness)
    assert rec_r.s == ctx.r, "x^2 - px + q must have index r"
    assert lcm(2 * rec_r.s, 2 * rec2.s) == divisor
    return GammaWitnesses(ctx, rec_r, rec2, divisor)


def minimal_cogenerator_dimension_supersingular_elliptic(cls):
    """Minimal dimension of an object whose hom functor classifies the
    modules of a supersingular elliptic class: r for irrational pi, r/2 for
    rational pi."""
    record = honda_tate_record(cls)
    if record.dim != 1 or cls.degree > 2:
        raise ValueError("elliptic class required")
    if record.slope_kind != "supersingular":
        raise ValueError("supersingular class required")
    if cls.is_rational:
        assert cls.context.r % 2 == 0
        return cls.context.r // 2
    return cls.context.r
