"""Set-partition cumulants of Jack characters.

A cumulant is determined by a moment map (index subset -> value) and the
product used on the cumulant side.  ``κ_•`` takes concatenated characters as
moments and multiplies pointwise; ``κ^•`` takes pointwise products as moments
and multiplies with the disjoint product ``•``.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import factorial
from typing import Callable, Iterable, Sequence, TypeVar

from .basis import ChExpansion, disjoint_product, pointwise_product
from .combinatorics import Partition, concat, partitions_of, set_partitions_of
from .reports import Report

V = TypeVar("V")


def partition_cumulant(
    moment: Callable[[frozenset], V],
    S: Iterable[int],
    product: Callable[[V, V], V] = operator.mul,
    memo: dict | None = None,
) -> V:
    """Solve ``m(S) = Σ_ν Π_{b∈ν} κ(b)`` for ``κ(S)``.

    ``memo`` may be shared between calls with the same moment map.
    """
    memo = {} if memo is None else memo

    def kappa(T: frozenset) -> V:
        if T in memo:
            return memo[T]
        val = moment(T)
        if len(T) > 1:
            for nu in set_partitions_of(sorted(T)):
                if len(nu) > 1:
                    val = val - reduce(product, (kappa(b) for b in nu))
        memo[T] = val
        return val

    return kappa(frozenset(S))


def mobius_top(nu_size: int) -> int:
    """Möbius function ``μ(ν, 1̂)`` of the set-partition lattice."""
    return (-1) ** (nu_size - 1) * factorial(nu_size - 1)


def mobius_cumulant(moment: Callable[[frozenset], V], S: Iterable[int], product=operator.mul, scale=operator.mul) -> V:
    """``κ(S) = Σ_ν μ(ν, 1̂) Π_{b∈ν} m(b)``; the closed form of :func:`partition_cumulant`."""
    terms = [
        scale(reduce(product, (moment(b) for b in nu)), mobius_top(len(nu)))
        for nu in set_partitions_of(sorted(S))
    ]
    return reduce(operator.add, terms)


def _partitions(pis: Sequence) -> list[Partition]:
    return [Partition(p) for p in pis]


def kappa_dot(*pis) -> ChExpansion:
    """``κ_•(Ch_{π_1}, …, Ch_{π_ℓ})`` in the basis ``γ^p Ch_μ``."""
    pis = _partitions(pis)
    return partition_cumulant(
        lambda S: ChExpansion.basis(concat(*(pis[i] for i in sorted(S)))),
        range(len(pis)),
        pointwise_product,
    )


def kappa_dot_reverse(*pis) -> ChExpansion:
    """``κ^•(Ch_{π_1}, …, Ch_{π_ℓ})``: pointwise moments, disjoint products."""
    pis = _partitions(pis)

    def moment(S):
        return reduce(pointwise_product, (ChExpansion.basis(pis[i]) for i in sorted(S)))

    return partition_cumulant(moment, range(len(pis)), disjoint_product)


def degree_bound(pis: Sequence[Partition]) -> int:
    return sum(p.size() + p.length() for p in pis) - 2 * (len(pis) - 1)


def tuples_up_to(max_size: int, max_parts: int, min_parts: int = 1) -> list[tuple[Partition, ...]]:
    """Multisets of non-empty partitions with total size ``≤ max_size``, as sorted tuples."""
    pool = [p for n in range(1, max_size + 1) for p in partitions_of(n)]
    pool.sort(key=lambda p: (-p.size(), tuple(-x for x in p)))
    out = []
    for ell in range(min_parts, max_parts + 1):
        for combo in combinations_with_replacement(pool, ell):
            if sum(p.size() for p in combo) <= max_size:
                out.append(combo)
    return out


def tuple_text(pis: Sequence[Partition]) -> str:
    return " ".join(Partition(p).text() for p in pis)


def verify_main_theorem(*pis) -> Report:
    """``deg κ_•(Ch_{π_1}, …) ≤ Σ(|π_i| + ℓ(π_i)) − 2(ℓ − 1)``."""
    pis = _partitions(pis)
    bound = degree_bound(pis)
    actual = kappa_dot(*pis).degree()
    rep = Report("main-theorem", {"tuple": tuple_text(pis)}, probes=1)
    rep.details.update(bound=bound, degree=actual if actual != float("-inf") else None)
    if actual > bound:
        rep.violation(tuple=tuple_text(pis), bound=bound, degree=actual)
    return rep


def cumulant_sign_violations(pis: Sequence[Partition], expansion: ChExpansion | None = None) -> list[dict]:
    """Coefficients of ``(−1)^{ℓ−1} κ_•`` in ``ℚ[δ]`` that are not non-negative integers."""
    e = kappa_dot(*pis) if expansion is None else expansion
    sign = (-1) ** (len(pis) - 1)
    bad = []
    for mu, poly in e.delta_polys().items():
        for k, c in poly.items():
            c = sign * c
            if c < 0 or c.denominator != 1:
                bad.append({"tuple": tuple_text(pis), "mu": mu.text(), "delta_power": k, "coeff": str(c)})
    return bad


def scan_cumulant_positivity(max_size: int = 6, max_parts: int = 3, min_parts: int = 1) -> Report:
    rep = Report("cumulant-positivity", {"max_size": max_size, "max_parts": max_parts})
    for pis in tuples_up_to(max_size, max_parts, min_parts):
        rep.probes += 1
        rep.violations.extend(cumulant_sign_violations(pis))
    return rep


def scan_main_theorem(max_size: int = 7, max_parts: int = 3) -> Report:
    rep = Report("main-theorem", {"max_size": max_size, "max_parts": max_parts})
    for pis in tuples_up_to(max_size, max_parts):
        rep.merge(verify_main_theorem(*pis))
    return rep


class FormalProduct:
    """Linear combination of products of formal moments ``m(b)``, keyed by the set-partition."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[frozenset, Fraction]):
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def moment(cls, S: frozenset) -> "FormalProduct":
        return cls({frozenset([frozenset(S)]): Fraction(1)})

    def __mul__(self, other: "FormalProduct") -> "FormalProduct":
        out: dict[frozenset, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 | k2
                out[k] = out.get(k, 0) + v1 * v2
        return FormalProduct(out)

    def __sub__(self, other: "FormalProduct") -> "FormalProduct":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return FormalProduct(out)


def check_coefficient_sum_zero(*pis) -> Report:
    """Expand ``κ_•`` over products ``Π_b Ch_{concat(b)}`` and check the coefficients sum to zero.

    The coefficients come from the formal recursion and are also compared to
    the Möbius values ``(−1)^{|ν|−1}(|ν|−1)!``.
    """
    pis = _partitions(pis)
    ell = len(pis)
    rep = Report("coefficient-sum", {"tuple": tuple_text(pis)})
    formal = partition_cumulant(FormalProduct.moment, range(ell), operator.mul)
    nus = sorted(set_partitions_of(list(range(ell))), key=len)
    coeffs = []
    for nu in nus:
        c = formal.terms.get(frozenset(nu), Fraction(0))
        coeffs.append(c)
        rep.probes += 1
        if c != mobius_top(len(nu)):
            rep.violation(partition=[sorted(b) for b in nu], coeff=str(c), expected=mobius_top(len(nu)))
    rep.details["coefficients"] = [int(c) if c.denominator == 1 else str(c) for c in coeffs]
    rep.details["labels"] = [
        " ".join(concat(*(pis[i] for i in sorted(b))).text() for b in nu)
        for nu in nus
    ]
    total = sum(coeffs)
    rep.details["sum"] = str(total)
    if ell < 2:
        rep.details["exempt"] = True
    elif total != 0:
        rep.violation(sum=str(total))
    return rep


def verify_brillinger(*pis, extra_sizes: int = 2) -> Report:
    """``κ_•^row(x) = Σ_ν κ^row(κ_•(x_b) : b ∈ ν)`` on all ``|λ| ≤ Σ|π_i| + extra_sizes``."""
    from . import rows

    pis = _partitions(pis)
    ell = len(pis)
    rep = Report("brillinger", {"tuple": tuple_text(pis)})
    lhs = rows.kappa_dot_row(*pis)
    inner = {}
    rhs = None
    for nu in set_partitions_of(list(range(ell))):
        args = []
        for b in nu:
            if b not in inner:
                inner[b] = kappa_dot(*(pis[i] for i in sorted(b)))
            args.append(rows.expansion_function(inner[b]))
        term = rows.kappa_row(args)
        rhs = term if rhs is None else rhs + term
    limit = sum(p.size() for p in pis) + extra_sizes
    for n in range(limit + 1):
        for lam in partitions_of(n):
            rep.probes += 1
            a, b = rows.evaluate_kernel(lhs, lam), rows.evaluate_kernel(rhs, lam)
            if a != b:
                rep.violation(lam=lam.text(), left=a.text(), right=b.text())
    return rep
