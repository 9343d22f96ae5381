from fractions import Fraction

import pytest

from jackfactor.algebra import AlphaPoly
from jackfactor.combinatorics import Partition, dominates, partitions_of, z_factor
from jackfactor.jack import (
    BudgetExceededError,
    SizeMismatchError,
    jack_in_p_basis,
    p_to_m_matrix,
    theta,
)


def test_small_jack_polynomials():
    assert jack_in_p_basis((1,)).text() == "p[1]"
    assert jack_in_p_basis((2,)).text() == "p[1,1] + a*p[2]"
    assert jack_in_p_basis((1, 1)).text() == "p[1,1] - p[2]"
    assert jack_in_p_basis(()).text() == "1"


def test_theta_examples():
    assert theta((2,), (2,)) == AlphaPoly({1: 1})
    assert theta((2,), (1, 1)) == AlphaPoly({0: -1})
    assert theta((1, 1), (2,)) == AlphaPoly({0: 1})
    with pytest.raises(SizeMismatchError):
        theta((2,), (1,))


def test_budget():
    with pytest.raises(BudgetExceededError):
        jack_in_p_basis((11,))
    with pytest.raises(BudgetExceededError):
        jack_in_p_basis((3,), budget=2)


@pytest.mark.parametrize("n", range(1, 9))
def test_normalization(n):
    ones = Partition([1] * n)
    for lam in partitions_of(n):
        assert theta(ones, lam) == AlphaPoly({0: 1})


def _pairing(a, b, alpha):
    total = Fraction(0)
    for pi, c in a.terms.items():
        d = b.terms.get(pi)
        if d is not None:
            total += c(alpha) * d(alpha) * z_factor(pi) * alpha ** pi.length()
    return total


@pytest.mark.parametrize("n", range(2, 8))
def test_orthogonality(n):
    parts = partitions_of(n)
    for alpha in (Fraction(1, 2), Fraction(3), Fraction(-7, 3)):
        for i, lam in enumerate(parts):
            for mu in parts[i + 1 :]:
                assert _pairing(jack_in_p_basis(lam), jack_in_p_basis(mu), alpha) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_triangularity_in_monomial_basis(n):
    parts = partitions_of(n)
    L = p_to_m_matrix(n)
    for lam in parts:
        J = jack_in_p_basis(lam)
        for j, mu in enumerate(parts):
            c = AlphaPoly()
            for i, rho in enumerate(parts):
                if L[i][j]:
                    c = c + J.coefficient(rho) * AlphaPoly({0: L[i][j]})
            if c:
                assert dominates(lam, mu)


def test_alpha_one_gives_schur_scaling():
    # at α = 1, J_λ = (hook product) s_λ; θ_π(λ) = hook(λ) χ^λ(π) / z_π
    J = jack_in_p_basis((2, 1))
    assert {pi.text(): c(1) for pi, c in J.terms.items() if c(1)} == {"[3]": -1, "[1,1,1]": 1}


def test_json_round_trip():
    from jackfactor.jack import PowerSumExpansion

    e = jack_in_p_basis((3, 1))
    assert PowerSumExpansion.from_json(e.to_json()) == e


@pytest.mark.parametrize("n", range(1, 7))
def test_specialisation_matches_a_direct_run(n):
    from jackfactor.jack import _jack_numeric

    parts = partitions_of(n)
    direct = _jack_numeric(n, Fraction(1))
    for i, lam in enumerate(parts):
        J = jack_in_p_basis(lam)
        assert [J.coefficient(rho)(1) for rho in parts] == direct[i]
