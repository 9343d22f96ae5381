from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jackfactor.algebra import DeltaPoly, Laurent
from jackfactor.basis import (
    ChExpansion,
    EvaluableFunction,
    ExpansionInconsistent,
    as_function,
    disjoint_product,
    evaluate,
    expand_in_ch_basis,
    leading_coefficient_check,
    pointwise_product,
    product_of_characters,
    structure_coefficients,
)
from jackfactor.characters import ch_classical
from jackfactor.combinatorics import Partition, concat, partitions_of, partitions_up_to

CH3_CH2 = {(1, (3,)): -6, (0, (3, 2)): 1, (0, (2, 1)): 6, (0, (4,)): 6}


def nonempty_pairs(total):
    pool = [p for n in range(1, total) for p in partitions_of(n)]
    return [(a, b) for i, a in enumerate(pool) for b in pool[i:] if a.size() + b.size() <= total]


def test_ch3_ch2_in_gamma_basis():
    assert product_of_characters((3,), (2,)) == ChExpansion(CH3_CH2)
    assert product_of_characters((3,), (2,)).text() == "Ch[3,2] + 6*Ch[4] + 6*Ch[2,1] + 6*δ*Ch[3]"


def test_ch3_ch3_structure_coefficients():
    g = structure_coefficients((3,), (3,))
    expected = {
        (3,): DeltaPoly({2: 6, 0: 3}),
        (2, 1): DeltaPoly({1: 9}),
        (4,): DeltaPoly({1: 18}),
        (1, 1, 1): DeltaPoly({0: 3}),
        (3, 1): DeltaPoly({0: 9}),
        (2, 2): DeltaPoly({0: 9}),
        (5,): DeltaPoly({0: 9}),
        (3, 3): DeltaPoly({0: 1}),
    }
    assert g == {Partition(k): v for k, v in expected.items()}


def test_empty_partition_is_the_unit():
    assert structure_coefficients((), (2, 1)) == {Partition((2, 1)): DeltaPoly({0: 1})}


def test_expansion_evaluates_to_the_product():
    e = product_of_characters((2, 1), (2,))
    for lam in partitions_up_to(7):
        assert evaluate(e, lam) == ch_classical((2, 1), lam) * ch_classical((2,), lam)


@pytest.mark.parametrize("pi, sigma", nonempty_pairs(7))
def test_products_commute(pi, sigma):
    # the memo key is symmetric, so solve the swapped product from scratch
    swapped = EvaluableFunction(
        lambda lam: ch_classical(sigma, lam) * ch_classical(pi, lam),
        degree=pi.size() + pi.length() + sigma.size() + sigma.length(),
        max_size=pi.size() + sigma.size(),
    )
    assert expand_in_ch_basis(swapped) == product_of_characters(pi, sigma)


@pytest.mark.parametrize("pi, sigma", nonempty_pairs(6))
def test_products_are_led_by_concatenation(pi, sigma):
    assert leading_coefficient_check(pi, sigma)
    assert product_of_characters(pi, sigma).degree() == pi.size() + pi.length() + sigma.size() + sigma.length()


def test_disjoint_product():
    assert disjoint_product(ChExpansion.basis((3,)), ChExpansion.basis((2,))) == ChExpansion.basis((3, 2))
    g1 = ChExpansion.basis((1,), p=1)
    assert disjoint_product(g1, g1) == ChExpansion.basis((1, 1), p=2)
    x = ChExpansion(CH3_CH2)
    assert disjoint_product(ChExpansion.one(), x) == x


def test_degree_is_additive_under_disjoint_product():
    a = ChExpansion({(1, (2,)): 3, (0, (1,)): 1})
    b = ChExpansion({(0, (3, 1)): 1})
    assert disjoint_product(a, b).degree() == a.degree() + b.degree()


def test_pointwise_product_is_associative():
    a, b, c = (ChExpansion.basis(p) for p in ((2,), (1,), (1, 1)))
    assert pointwise_product(pointwise_product(a, b), c) == pointwise_product(a, pointwise_product(b, c))


def test_expansion_recovers_a_known_combination():
    e = ChExpansion({(2, (2,)): Fraction(1, 3), (0, (2, 1)): -1, (1, ()): 5})
    assert expand_in_ch_basis(as_function(e)) == e


basis_terms = st.tuples(st.integers(0, 3), st.sampled_from([p for n in range(7) for p in partitions_of(n)])).filter(
    lambda t: t[0] + t[1].size() + t[1].length() <= 8
)


@settings(max_examples=15, deadline=None)
@given(st.dictionaries(basis_terms, st.fractions(-5, 5, max_denominator=3), min_size=1, max_size=4))
def test_expansion_round_trip(terms):
    e = ChExpansion(terms)
    assert expand_in_ch_basis(as_function(e)) == e


def test_non_polynomial_function_is_rejected():
    first_row = EvaluableFunction(lambda lam: Laurent.constant(lam[0] if lam else 0), degree=2)
    with pytest.raises(ExpansionInconsistent):
        expand_in_ch_basis(first_row)


def test_text_and_json():
    e = product_of_characters((3,), (3,))
    assert e.text().startswith("Ch[3,3]")
    assert "(6*δ^2 + 3)*Ch[3]" in e.text()
    assert ChExpansion.from_json(e.to_json()) == e
    assert ChExpansion().text() == "0"
    assert ChExpansion.basis((2,), p=1, coeff=-2).text() == "2*δ*Ch[2]"
    assert ChExpansion.basis((2,), p=1).text("gamma") == "γ*Ch[2]"


def test_delta_and_gamma_views_agree():
    e = product_of_characters((3,), (3,))
    assert ChExpansion.from_delta_polys(e.delta_polys()) == e
    assert ChExpansion.from_gamma_polys(e.gamma_polys()) == e


@pytest.mark.parametrize("pi, sigma", nonempty_pairs(6))
def test_structure_coefficients_are_nonnegative_integral(pi, sigma):
    for mu, g in structure_coefficients(pi, sigma).items():
        assert g.is_nonnegative_integral(), (pi, sigma, mu, g.text())
