"""Normalized Jack characters ``Ch_π(λ)`` as Laurent polynomials in ``A``.

Two independent routes are provided: the classical one through the
power-sum coefficients of Jack polynomials, and explicit box-sum formulas
in α-contents for a handful of small ``π``.  Checkers for the four
characterizing conditions (K1)–(K4) live here as well, except (K1), which
is the degree bookkeeping of :mod:`jackfactor.basis`.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .algebra import (
    ONE,
    ZERO,
    Laurent,
    alpha_to_laurent,
    gamma_as_laurent,
    solve_linear,
)
from .combinatorics import Partition, pad_with_ones, partitions_up_to, z_factor
from .jack import SIZE_BUDGET, BudgetExceededError, theta
from .reports import Report


@dataclass(frozen=True)
class ContentBox:
    """Box in column ``x`` and row ``y`` (both 1-based, French convention)."""

    x: int
    y: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1:
            raise ValueError("box coordinates are positive integers")


def alpha_content(box: ContentBox) -> Laurent:
    """``A·x − y/A``."""
    return Laurent({1: box.x, -1: -box.y})


def boxes(lam) -> list[ContentBox]:
    return [ContentBox(x, y) for y, row in enumerate(lam, start=1) for x in range(1, row + 1)]


_lock = threading.Lock()
_memo: dict[tuple[Partition, Partition], Laurent] = {}


def ch_classical(pi, lam, budget: int = SIZE_BUDGET) -> Laurent:
    """``Ch_π(λ)`` from the power-sum expansion of ``J_λ``."""
    pi, lam = Partition(pi), Partition(lam)
    key = (pi, lam)
    val = _memo.get(key)
    if val is not None:
        return val
    n = lam.size()
    if n > budget:
        raise BudgetExceededError(f"|λ| = {n} exceeds the size budget {budget}")
    if not pi:
        val = ONE
    elif n < pi.size():
        val = ZERO
    else:
        m1 = pi.multiplicity(1)
        scale = comb(n - pi.size() + m1, m1) * z_factor(pi)
        th = theta(pad_with_ones(pi, n), lam, budget)
        val = alpha_to_laurent(th, shift=-(pi.size() - pi.length())) * scale
    with _lock:
        _memo[key] = val
    return val


Ch = ch_classical


class UnsupportedPartitionError(ValueError):
    pass


def _content_formula(pi: Partition, lam: Partition) -> Laurent:
    g = gamma_as_laurent()
    bx = boxes(lam)
    n = len(bx)
    if pi == ():
        return ONE
    if pi == (1,):
        return Laurent.constant(n)
    if pi == (2,):
        return sum((2 * (alpha_content(b) + g) for b in bx), ZERO)
    if pi == (3,):
        single = sum(
            (3 * (alpha_content(b) + g) * (alpha_content(b) + 2 * g) + Fraction(3, 2) for b in bx),
            ZERO,
        )
        # Σ over ordered pairs of boxes of the constant -3/2
        return single + Fraction(-3, 2) * n * n
    if pi == (1, 1):
        return Laurent.constant(-n + n * n)
    raise UnsupportedPartitionError(f"no box-sum formula for {pi}")


CONTENT_FORMULA_PARTITIONS = (Partition(), Partition([1]), Partition([2]), Partition([3]), Partition([1, 1]))


def ch_content_formula(pi, lam) -> Laurent:
    """``Ch_π(λ)`` from the explicit box sums; ``π`` must be one of ∅, (1), (2), (3), (1,1)."""
    return _content_formula(Partition(pi), Partition(lam))


def verify_K3_vanishing(pi, size_limit: int) -> Report:
    """``Ch_π(λ) = 0`` whenever ``|λ| < |π|``."""
    pi = Partition(pi)
    rep = Report("K3", {"pi": pi.text(), "size_limit": size_limit})
    for lam in partitions_up_to(min(size_limit, pi.size() - 1)):
        rep.probes += 1
        v = ch_classical(pi, lam)
        if v:
            rep.violation(lam=lam.text(), value=v.text())
    return rep


def verify_K4_laurent_degree(pi, size_limit: int) -> Report:
    """Upper Laurent degree of ``Ch_π(λ)`` is at most ``|π| − ℓ(π)``."""
    pi = Partition(pi)
    bound = pi.size() - pi.length()
    rep = Report("K4", {"pi": pi.text(), "size_limit": size_limit, "bound": bound})
    for lam in partitions_up_to(size_limit):
        rep.probes += 1
        v = ch_classical(pi, lam)
        if v.upper_degree() > bound:
            rep.violation(lam=lam.text(), degree=v.upper_degree())
    return rep


class FitFailure(ArithmeticError):
    pass


def _exponents(m: int, max_total: int):
    return [a for a in product(range(max_total + 1), repeat=m) if sum(a) <= max_total]


def _decreasing_tuples(m: int, first_max: int, first_min: int = 0):
    out = []

    def go(prefix, cap):
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            go(prefix + [v], v)

    for first in range(first_max, first_min - 1, -1):
        go([first], first)
    return out


def _monomial_value(point, a) -> int:
    v = 1
    for x, e in zip(point, a):
        v *= x**e
    return v


def power_sum_monomials(pi, m: int) -> dict[tuple[int, ...], int]:
    """``p_π(x_1..x_m)`` as a map from exponent vectors to integer coefficients."""
    poly = {(0,) * m: 1}
    for part in pi:
        new: dict[tuple[int, ...], int] = {}
        for a, c in poly.items():
            for j in range(m):
                b = list(a)
                b[j] += part
                b = tuple(b)
                new[b] = new.get(b, 0) + c
        poly = new
    return poly


def fit_row_polynomial(func, m: int, degree: int) -> dict[tuple[int, ...], Laurent]:
    """Fit ``(λ_1..λ_m) ↦ func(λ)`` by a polynomial of total degree ``≤ degree``.

    The fitting nodes are the weakly decreasing tuples with ``λ_1 ≤ degree``
    (a simplex lattice in the gap coordinates ``λ_i − λ_{i+1}``, hence
    unisolvent); the tuples with ``λ_1 = degree + 1`` are held out and must
    agree with the fit, otherwise :class:`FitFailure` is raised.
    """
    exps = _exponents(m, degree)
    nodes = _decreasing_tuples(m, degree)
    assert len(nodes) == len(exps)
    values = [func(Partition(x for x in pt if x)) for pt in nodes]
    matrix = [[_monomial_value(pt, a) for a in exps] for pt in nodes]
    powers = sorted({k for v in values for k, _ in v.items()})
    coeffs = {a: ZERO for a in exps}
    for k in powers:
        rhs = [v.coefficient_at(k) for v in values]
        sol = solve_linear(matrix, rhs)
        for a, c in zip(exps, sol):
            if c:
                coeffs[a] = coeffs[a] + Laurent.monomial(c, k)
    coeffs = {a: c for a, c in coeffs.items() if c}
    for pt in _decreasing_tuples(m, degree + 1, degree + 1):
        fitted = sum((c * _monomial_value(pt, a) for a, c in coeffs.items()), ZERO)
        actual = func(Partition(x for x in pt if x))
        if fitted != actual:
            raise FitFailure(f"held-out tuple {pt}: fit gives {fitted}, function gives {actual}")
    return coeffs


def verify_K2_top_degree(pi, m: int) -> Report:
    """The row-polynomial of ``Ch_π`` in ``m`` rows has top part ``A^{|π|−ℓ(π)} p_π``."""
    pi = Partition(pi)
    D = pi.size()
    rep = Report("K2", {"pi": pi.text(), "m": m})
    if (D + 1) * m > SIZE_BUDGET:
        raise BudgetExceededError(f"K2 grid for |π|={D}, m={m} needs diagrams beyond the size budget")
    coeffs = fit_row_polynomial(lambda lam: ch_classical(pi, lam), m, D)
    expected = {a: Laurent.monomial(c, D - pi.length()) for a, c in power_sum_monomials(pi, m).items()}
    top = {a: c for a, c in coeffs.items() if sum(a) == D}
    rep.probes = len(_exponents(m, D))
    if top != expected:
        rep.violation(
            top={str(a): c.text() for a, c in top.items()},
            expected={str(a): c.text() for a, c in expected.items()},
        )
    rep.details["top"] = {str(a): c.text() for a, c in sorted(top.items())}
    return rep


def clear_memory() -> None:
    with _lock:
        _memo.clear()
