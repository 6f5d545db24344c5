"""Tour of the Honda-Tate invariants for small finite fields.

Enumerates the Weil classes of degree up to four over F_3 and F_9, prints
each class with its slope type, local invariants, index and multiplicity,
and finishes with the index witnesses that pin down the divisor of any
uniform rank constant.

Run: python3 demos/honda_tate_tour.py
"""

from weilkit import (
    GlobalContext,
    enumerate_weil,
    gamma_witnesses,
    honda_tate_record,
    reciprocity_sum,
)

for q in (3, 9):
    ctx = GlobalContext.from_q(q)
    classes = enumerate_weil(ctx, 4)
    print("=== F_%d: %d classes of degree <= 4 ===" % (q, len(classes)))
    for cls in classes:
        rec = honda_tate_record(cls)
        invs = ", ".join(str(pl.invariant) for pl in rec.places)
        print(
            "  %-22s %-13s s=%d dim=%d m=%d invs=[%s] rec=%s"
            % (
                str(cls.polynomial),
                rec.slope_kind,
                rec.s,
                rec.dim,
                rec.multiplicity,
                invs,
                reciprocity_sum(rec),
            )
        )

print()
for q in (8, 32):
    ctx = GlobalContext.from_q(q)
    w = gamma_witnesses(ctx)
    print(
        "q=%d: any uniform rank constant is divisible by %d "
        "(witnesses with s=%d and s=2)" % (q, w.divisor, w.index_r_witness.s)
    )
