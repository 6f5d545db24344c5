"""Dieudonne quotients at finite precision: construction, center, and the
ordinary matrix structure.

Builds the twisted algebra for three Weil sets over F_9, confirms that its
center is exactly the image of the minimal central order, and for the
ordinary class exhibits the pair of orthogonal idempotents realizing the
algebra as 2x2 matrices over the p-adic central order.

Run: python3 demos/dieudonne_structures.py
"""

from weilkit import (
    GlobalContext,
    IntPolynomial,
    build_dieudonne,
    ordinary_matrix_check,
    validate_weil,
    verify_center,
    weil_set,
)

ctx = GlobalContext.from_q(9)
families = {
    "supersingular x^2+9": [(9, 0, 1)],
    "ordinary x^2-x+9": [(9, -1, 1)],
    "both rational classes": [(-3, 1), (3, 1)],
}

for name, polys in families.items():
    w = weil_set([validate_weil(IntPolynomial(cs), ctx) for cs in polys])
    alg = build_dieudonne(w, 5)
    print("=== %s ===" % name)
    print("  N = %d, basis F_i for -N <= i < N, Z_p-rank %d" % (alg.n_bound, alg.zp_rank))
    print("  defining relation coefficients:", alg.relation)
    report = verify_center(alg)
    print(
        "  center check: passed=%s, rank=%d, effective precision %d"
        % (report.passed, report.rank, report.effective_precision)
    )

w = weil_set([validate_weil(IntPolynomial((9, -1, 1)), ctx)])
alg = build_dieudonne(w, 5)
verdict = ordinary_matrix_check(alg)
print()
print("ordinary matrix structure:", verdict.verdict)
for i, e in enumerate(verdict.idempotents):
    nonzero = {
        alg.index_of_slot(s): c for s, c in enumerate(e) if any(c)
    }
    print("  idempotent %d supported on F_i for i in %s" % (i + 1, sorted(nonzero)))
