from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jackfactor.algebra import (
    NEG_INFINITY,
    ONE,
    ZERO,
    A,
    AlphaPoly,
    DegreeExceededError,
    DeltaPoly,
    Echelon,
    GammaPoly,
    InconsistentSystemError,
    Laurent,
    RationalFunction,
    UnderdeterminedSystemError,
    alpha_to_laurent,
    coefficient_at,
    delta_to_gamma,
    gamma_as_laurent,
    gamma_to_delta,
    interpolate_poly,
    laurent_upper_degree,
    solve_linear,
    substitute_gamma,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
laurents = st.dictionaries(st.integers(-4, 4), fractions, max_size=4).map(Laurent)


@given(laurents, laurents, laurents)
def test_laurent_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + ZERO == f and f * ONE == f
    assert f - f == ZERO


@given(laurents, st.integers(-3, 3).filter(lambda a: a != 0))
def test_evaluation_is_a_ring_map(f, a):
    g = f * f + A
    assert g.at(a) == f.at(a) ** 2 + a


gamma_polys = st.dictionaries(st.integers(0, 4), fractions, max_size=4).map(GammaPoly)


@given(gamma_polys, gamma_polys, gamma_polys)
def test_polynomial_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * GammaPoly({0: 1}) == f and f + GammaPoly() == f
    d1, d2 = gamma_to_delta(f), gamma_to_delta(g)
    assert d1 * d2 == gamma_to_delta(f * g)
    assert delta_to_gamma(d1) == f


@given(gamma_polys, gamma_polys)
def test_substitution_is_a_ring_map(f, g):
    assert substitute_gamma(f * g) == substitute_gamma(f) * substitute_gamma(g)
    assert substitute_gamma(f + g) == substitute_gamma(f) + substitute_gamma(g)


def test_gamma_is_fixed_by_the_flip():
    g = gamma_as_laurent()
    assert g.flip() == g
    assert A.flip() == Laurent({-1: -1})


@given(laurents)
def test_text_round_trip(f):
    assert Laurent.parse(f.text()) == f


def test_gamma_and_degrees():
    g = gamma_as_laurent()
    assert g == Laurent({1: -1, -1: 1})
    assert laurent_upper_degree(ZERO) == NEG_INFINITY
    assert laurent_upper_degree(Laurent({3: 2, -1: 1})) == 3
    assert laurent_upper_degree(Laurent({-2: 5})) == -2
    assert coefficient_at(Laurent({1: 2, -1: -2}), -1) == -2
    assert coefficient_at(Laurent({1: 2, -1: -2}), 0) == 0
    assert coefficient_at(ZERO, 5) == 0


def test_gamma_delta_conversion():
    assert gamma_to_delta(GammaPoly({1: 1})) == DeltaPoly({1: -1})
    assert gamma_to_delta(GammaPoly({2: 3, 0: 1})) == DeltaPoly({2: 3, 0: 1})
    assert gamma_to_delta(GammaPoly()) == DeltaPoly()
    assert delta_to_gamma(gamma_to_delta(GammaPoly({3: 2, 1: 5}))) == GammaPoly({3: 2, 1: 5})


def test_substitute_gamma():
    assert substitute_gamma(GammaPoly({0: 1})) == ONE
    assert substitute_gamma(GammaPoly({1: 1})) == Laurent({1: -1, -1: 1})
    assert substitute_gamma(GammaPoly({2: 1})) == Laurent({2: 1, 0: -2, -2: 1})


def test_alpha_to_laurent_uses_square_root():
    # α = A², and the shift multiplies by A^shift
    assert alpha_to_laurent(AlphaPoly({1: 1, 0: -1}), shift=-1) == Laurent({1: 1, -1: -1})


def test_poly_text():
    assert DeltaPoly({2: 6, 0: 3}).text() == "6*δ^2 + 3"
    assert AlphaPoly({1: 1, 0: -1}).text() == "a - 1"
    assert GammaPoly().text() == "0"


def test_solve_linear_unique():
    assert solve_linear([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert solve_linear([[1, 1], [1, -1], [2, 0]], [3, 1, 4]) == [2, 1]


def test_solve_linear_inconsistent():
    with pytest.raises(InconsistentSystemError):
        solve_linear([[1, 1], [1, 1]], [1, 2])


def test_solve_linear_underdetermined_reports_free_columns():
    with pytest.raises(UnderdeterminedSystemError) as info:
        solve_linear([[1, 1, 0]], [1])
    assert set(info.value.free_columns) == {1, 2}


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3), st.lists(fractions, min_size=3, max_size=3))
def test_solver_recovers_solution(matrix, x):
    rhs = [sum(Fraction(a) * b for a, b in zip(row, x)) for row in matrix]
    try:
        sol = solve_linear(matrix, rhs)
    except UnderdeterminedSystemError:
        return
    assert sol == x


def test_echelon_verifies_rows_after_full_rank():
    e = Echelon(1)
    e.add({0: 1, 1: 2})
    e.add({0: 2, 1: 4})
    assert e.solve() == [2]
    e.add({0: 1, 1: 3})
    with pytest.raises(InconsistentSystemError):
        e.solve()


def test_interpolation():
    assert interpolate_poly([(0, 1), (1, 3)], 1).dense() == [1, 2]
    assert interpolate_poly([(1, 1), (2, 4), (3, 9), (4, 16)], 2).dense() == [0, 0, 1]
    assert interpolate_poly([(0, 5)], 0).dense() == [5]
    with pytest.raises(DegreeExceededError):
        interpolate_poly([(0, 0), (1, 1), (2, 4)], 1)


def test_rational_function_cancellation():
    num = (A - ONE) * (A + ONE)
    r = RationalFunction(num, A - ONE)
    assert r.is_laurent() and r.to_laurent() == A + ONE
    half = RationalFunction(ONE, A + ONE)
    assert not half.is_laurent()
    with pytest.raises(ValueError):
        half.to_laurent()
    assert (half + half) * RationalFunction(A + ONE) == RationalFunction(Laurent.constant(2))
    with pytest.raises(ZeroDivisionError):
        RationalFunction(ONE, ZERO)
