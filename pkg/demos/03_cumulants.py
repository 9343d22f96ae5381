"""Cumulants of characters and the degree bound they obey.

κ_• treats the concatenated character Ch_{π₁…π_ℓ} as the joint moment and
the pointwise product as the product of moments.  Each extra argument
lowers the degree by at least two.
"""
from jackfactor.cumulants import (
    check_coefficient_sum_zero,
    degree_bound,
    kappa_dot,
    scan_main_theorem,
    cumulant_sign_violations,
)
from jackfactor.combinatorics import Partition

two = Partition((2,))
for ell in (1, 2, 3):
    pis = [two] * ell
    e = kappa_dot(*pis)
    print(f"κ(Ch2 × {ell}) = {e}")
    print(f"    degree {e.degree()}, bound {degree_bound(pis)}")

# The moment expansion behind κ has coefficients summing to zero.
rep = check_coefficient_sum_zero(two, two, two)
for label, c in zip(rep.details["labels"], rep.details["coefficients"]):
    print(f"  {c:+d} × {label}")

print()
rep = scan_main_theorem(5, 3)
print(f"degree bound over {rep.probes} tuples with Σ|π| ≤ 5: {len(rep.violations)} violations")
print("sign-corrected coefficients of κ(Ch2,Ch2) that are negative:", cumulant_sign_violations([two, two]))
