"""Brute-force group algebra of ``S_n`` and the ``δ = 0`` check of structure coefficients.

Permutations are one-line tuples on ``{0, …, n−1}``; the product is
composition ``(ab)(i) = a(b(i))``.  Class indicators are central, so the
order of composition never matters for the checks here.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import permutations

from .basis import structure_coefficients
from .combinatorics import Partition
from .reports import Report

RANK_BUDGET = 8

Perm = tuple[int, ...]


class RankTooSmallError(ValueError):
    pass


class RankBudgetError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


class GroupAlgebraElement:
    def __init__(self, n: int, terms: dict[Perm, Fraction | int] | None = None):
        self.n = n
        self.terms: dict[Perm, Fraction] = {}
        for g, c in (terms or {}).items():
            if sorted(g) != list(range(n)):
                raise ValueError(f"{g} is not a permutation of {n} points")
            if c:
                self.terms[tuple(g)] = Fraction(c)

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {tuple(range(n)): 1})

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        _same_rank(self, other)
        t = dict(self.terms)
        for g, c in other.terms.items():
            t[g] = t.get(g, 0) + c
        return GroupAlgebraElement(self.n, t)

    def scale(self, c) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, {g: v * c for g, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"GroupAlgebraElement(n={self.n}, {len(self.terms)} terms)"


def _same_rank(a, b):
    if a.n != b.n:
        raise RankMismatchError(f"ranks differ: {a.n} and {b.n}")


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def cycle_type(g: Perm) -> Partition:
    seen = [False] * len(g)
    lengths = []
    for i in range(len(g)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                k += 1
            lengths.append(k)
    return Partition(lengths)


def class_indicator(pi, n: int) -> GroupAlgebraElement:
    """``A_{π;n}``: sum over injective fillings of the rows of ``π`` turned into cycles."""
    pi = Partition(pi)
    if n > RANK_BUDGET:
        raise RankBudgetError(f"rank {n} exceeds {RANK_BUDGET}")
    if pi.size() > n:
        raise RankTooSmallError(f"|π| = {pi.size()} > n = {n}")
    counts: Counter = Counter()
    for filling in permutations(range(n), pi.size()):
        g = list(range(n))
        pos = 0
        for row in pi:
            cyc = filling[pos : pos + row]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                g[a] = b
            pos += row
        counts[tuple(g)] += 1
    return GroupAlgebraElement(n, dict(counts))


def convolve(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _same_rank(a, b)
    out: dict[Perm, Fraction] = {}
    for g, c in a.terms.items():
        for h, d in b.terms.items():
            k = compose(g, h)
            out[k] = out.get(k, 0) + c * d
    return GroupAlgebraElement(a.n, out)


def verify_delta_zero(pi, sigma, n: int) -> Report:
    """``A_π A_σ = Σ_μ g^μ_{π,σ}(0) A_μ`` in ``ℚ[S_n]``, compared term by term."""
    pi, sigma = Partition(pi), Partition(sigma)
    rep = Report("delta-zero", {"pi": pi.text(), "sigma": sigma.text(), "n": n})
    if pi.size() + sigma.size() > n:
        raise RankTooSmallError(f"|π| + |σ| = {pi.size() + sigma.size()} > n = {n}")
    lhs = convolve(class_indicator(pi, n), class_indicator(sigma, n))
    rhs = GroupAlgebraElement(n)
    for mu, g in structure_coefficients(pi, sigma).items():
        c = g(0)
        if c and mu.size() <= n:
            rhs = rhs + class_indicator(mu, n).scale(c)
    support = set(lhs.terms) | set(rhs.terms)
    rep.probes = len(support)
    for g in sorted(support):
        a, b = lhs.terms.get(g, 0), rhs.terms.get(g, 0)
        if a != b:
            rep.violation(permutation=list(g), convolution=str(a), expansion=str(b))
            if len(rep.violations) >= 10:
                break
    return rep
