"""Products of characters, written back in the character basis.

The coefficients are polynomials in δ = A − 1/A.  Setting δ = 0 must give
the multiplication of conjugacy-class indicators in the symmetric group,
which we check by brute force.
"""
from jackfactor.basis import product_of_characters, structure_coefficients
from jackfactor.symgroup import verify_delta_zero

print("Ch3·Ch2 =", product_of_characters((3,), (2,)))
print("Ch3·Ch3 =", product_of_characters((3,), (3,)))

print()
for mu, g in structure_coefficients((2, 1), (2,)).items():
    print(f"  g^{mu.text()}_(21),(2) = {g}")

# δ = 0 against the group algebra of S_5
print()
rep = verify_delta_zero((3,), (2,), 5)
print(f"δ=0 check in S_5: {rep.probes} permutations compared, passed={rep.passed}")
