"""Free cumulants and Kerov–Lassalle polynomials.

The free cumulants R_k of a diagram come from the transition measure of its
profile.  Every character is a polynomial in γ and the R_k.
"""
from jackfactor.basis import EvaluableFunction, as_function
from jackfactor.characters import ch_classical
from jackfactor.cumulants import kappa_dot
from jackfactor.free import free_cumulants, kerov_lassalle_solve, transition_measure

lam = (3, 1)
mu = transition_measure(lam)
print(f"transition measure of {list(lam)}:")
for x, w in mu.atoms:
    print(f"  at {x.to_laurent()}:  ({w.num}) / ({w.den})")
print("R_2..R_4:", [str(r) for r in free_cumulants(lam, 4)[2:]])

print()
for k in range(1, 5):
    F = EvaluableFunction(lambda lam, k=k: ch_classical((k,), lam), k + 1)
    print(f"Ch{k} = {kerov_lassalle_solve(F)}")

# Ch_{2,2} has mixed signs; the covariance restores a single sign.
print()
F = EvaluableFunction(lambda lam: ch_classical((2, 2), lam), 6)
print("Ch[2,2]      =", kerov_lassalle_solve(F))
print("κ(Ch2, Ch2)  =", kerov_lassalle_solve(as_function(kappa_dot((2,), (2,)))))
