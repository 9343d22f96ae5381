"""Jack polynomials and the normalized characters built from them.

Run with ``python3 demos/01_jack_characters.py``.
"""
from jackfactor.characters import ch_classical, ch_content_formula
from jackfactor.combinatorics import partitions_of
from jackfactor.jack import jack_in_p_basis

# J_λ in power sums; ``a`` is the Jack parameter α
for lam in partitions_of(3):
    print(f"J{lam.text():8} = {jack_in_p_basis(lam)}")

# Ch_π(λ) is a Laurent polynomial in A, where α = A²
print()
for lam in partitions_of(4):
    print(f"Ch[2]({lam.text()}) = {ch_classical((2,), lam)}")

# The box-sum formulas give the same values with no Jack polynomial in sight.
lam = (4, 2, 1)
print()
for pi in [(1,), (2,), (3,), (1, 1)]:
    a, b = ch_classical(pi, lam), ch_content_formula(pi, lam)
    print(f"Ch{list(pi)}{list(lam)}: classical {a}  box sum {b}  agree={a == b}")

# Characters vanish on diagrams smaller than π.
print()
print("Ch[3]([2]) =", ch_classical((3,), (2,)))
