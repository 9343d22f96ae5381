"""Row functions: characters as sums over subsets of rows.

A character is a sum of kernel terms f_r over r-element sets of rows.  The
separate product ⊗ multiplies kernels on disjoint row sets, and the
difference operators see the top degree of a kernel.
"""
from jackfactor.cumulants import kappa_dot
from jackfactor.rows import (
    ch_kernel,
    evaluate_kernel,
    expansion_function,
    random_kernel,
    row_degree_probe,
    separate_product,
    verify_main_theorem_conditions,
    verify_small_degree_killed,
    verify_Z3,
)

K = ch_kernel((2,))
print("Ch2 kernel: f1(3) =", K.value((3,)), "  f2(2,1) =", K.value((2, 1)))
print("Ch2 on [3,1] from the kernel:", evaluate_kernel(K, (3, 1)))
print("probed degree of the Ch2 kernel:", row_degree_probe(K))

P = separate_product(ch_kernel((1,)), ch_kernel((1,)))
print("(Ch1 ⊗ Ch1)[3,1] =", evaluate_kernel(P, (3, 1)), "  (Ch1 ⊗ Ch1)[3] =", evaluate_kernel(P, (3,)))

# Checks that feed the inductive proof of the degree bound
print()
rep = verify_main_theorem_conditions((2,), (2,), (1,))
print(f"Z3 checks for κ(Ch2,Ch2,Ch1): {rep.probes} coefficients, passed={rep.passed}")
F = expansion_function(kappa_dot((2,), (2,)))
print("Z3 at n=4, r=2:", verify_Z3(F, 4, 2).passed)

R = random_kernel(3, seed=7)
print("random kernel of degree ≤ 3 killed at d = 4:", verify_small_degree_killed(R, 4).passed)
