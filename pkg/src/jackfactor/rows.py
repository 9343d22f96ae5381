"""Row functions, their convolution kernels, and the separate product ``⊗``.

A row function is ``F(λ) = Σ_r Σ_{i_1<…<i_r} f_r(λ_{i_1}, …, λ_{i_r})``.
Kernels are stored on multisets of positive integers (sorted tuples); a
zero argument never reaches a kernel because zero rows are dropped.
"""
from __future__ import annotations

import random
import threading
from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable, Sequence

from .algebra import NEG_INFINITY, ZERO, Laurent
from .basis import ChExpansion, evaluate
from .characters import ch_classical
from .combinatorics import Partition, concat, partitions_of
from .cumulants import partition_cumulant, tuple_text
from .jack import SIZE_BUDGET, BudgetExceededError
from .reports import Report

Multiset = tuple[int, ...]


class ReconstructionMismatch(ArithmeticError):
    pass


def _canon(X: Iterable[int]) -> Multiset:
    X = tuple(sorted(X, reverse=True))
    if any(x <= 0 for x in X):
        raise ValueError(f"kernel arguments must be positive integers, got {X}")
    return X


def sub_multisets(X: Multiset):
    """Yield ``(Y, X∖Y, count)`` where ``count`` is the number of index subsets giving ``Y``."""
    values = sorted(Counter(X).items(), reverse=True)
    for ks in product(*(range(m + 1) for _, m in values)):
        count = 1
        sub, rest = [], []
        for (v, m), k in zip(values, ks):
            count *= comb(m, k)
            sub += [v] * k
            rest += [v] * (m - k)
        yield tuple(sub), tuple(rest), count


class RowKernel:
    """A convolution kernel ``(f_r)``, computed lazily and memoized per multiset."""

    def __init__(self):
        self._memo: dict[Multiset, Laurent] = {}
        self._lock = threading.Lock()

    def _compute(self, X: Multiset) -> Laurent:
        raise NotImplementedError

    def value(self, X: Iterable[int]) -> Laurent:
        X = _canon(X)
        v = self._memo.get(X)
        if v is None:
            v = self._compute(X)
            with self._lock:
                self._memo[X] = v
        return v

    def __add__(self, other: "RowKernel") -> "RowKernel":
        return LinearKernel([(1, self), (1, other)])

    def __sub__(self, other: "RowKernel") -> "RowKernel":
        return LinearKernel([(1, self), (-1, other)])

    def __neg__(self):
        return LinearKernel([(-1, self)])

    def scale(self, c) -> "RowKernel":
        return LinearKernel([(c, self)])


class SourceKernel(RowKernel):
    """Kernel recovered from a function on diagrams by triangular inversion."""

    def __init__(self, source: Callable[[Partition], Laurent], budget: int = SIZE_BUDGET):
        super().__init__()
        self.source = source
        self.budget = budget

    def _compute(self, X: Multiset) -> Laurent:
        if sum(X) > self.budget:
            raise BudgetExceededError(f"kernel argument {X} exceeds the size budget {self.budget}")
        val = self.source(Partition(X))
        for Y, _, count in sub_multisets(X):
            if len(Y) < len(X):
                val = val - self.value(Y) * count
        return val


class LinearKernel(RowKernel):
    def __init__(self, terms: Sequence[tuple[Fraction | int, RowKernel]]):
        super().__init__()
        self.terms = list(terms)

    def _compute(self, X: Multiset) -> Laurent:
        out = ZERO
        for c, k in self.terms:
            out = out + k.value(X) * c
        return out


class SeparateProduct(RowKernel):
    def __init__(self, left: RowKernel, right: RowKernel):
        super().__init__()
        self.left, self.right = left, right

    def _compute(self, X: Multiset) -> Laurent:
        out = ZERO
        for Y, Z, count in sub_multisets(X):
            a = self.left.value(Y)
            if a:
                b = self.right.value(Z)
                if b:
                    out = out + a * b * count
        return out


class FixedOrderKernel(RowKernel):
    """``f_m = g`` and every other order vanishes; ``g`` must be symmetric."""

    def __init__(self, order: int, g: Callable[[Multiset], Laurent]):
        super().__init__()
        self.order = order
        self.g = g

    def _compute(self, X: Multiset) -> Laurent:
        return self.g(X) if len(X) == self.order else ZERO


class TableKernel(RowKernel):
    """Kernel given by an explicit function of the multiset (any order)."""

    def __init__(self, f: Callable[[Multiset], Laurent]):
        super().__init__()
        self.f = f

    def _compute(self, X: Multiset) -> Laurent:
        return self.f(X)


def kernel_value(K: RowKernel, X: Iterable[int]) -> Laurent:
    return K.value(X)


def evaluate_kernel(K: RowKernel, lam, check: bool = True) -> Laurent:
    """``Σ_{row subsets} f_{|S|}(λ_S)``; compared with the source for :class:`SourceKernel`."""
    lam = Partition(lam)
    out = ZERO
    for Y, _, count in sub_multisets(tuple(lam)):
        v = K.value(Y)
        if v:
            out = out + v * count
    if check and isinstance(K, SourceKernel):
        expected = K.source(lam)
        if out != expected:
            raise ReconstructionMismatch(f"kernel gives {out} at {lam}, source gives {expected}")
    return out


def separate_product(K1: RowKernel, K2: RowKernel) -> RowKernel:
    return SeparateProduct(K1, K2)


def as_function(K: RowKernel) -> Callable[[Partition], Laurent]:
    return lambda lam: evaluate_kernel(K, lam, check=False)


_ch_kernels: dict[Partition, SourceKernel] = {}
_ch_lock = threading.Lock()


def ch_kernel(pi) -> SourceKernel:
    pi = Partition(pi)
    k = _ch_kernels.get(pi)
    if k is None:
        k = SourceKernel(lambda lam, pi=pi: ch_classical(pi, lam))
        with _ch_lock:
            k = _ch_kernels.setdefault(pi, k)
    return k


def unit_kernel() -> RowKernel:
    return TableKernel(lambda X: Laurent.constant(1) if not X else ZERO)


def expansion_function(e: ChExpansion) -> Callable[[Partition], Laurent]:
    return lambda lam: evaluate(e, lam)


def pointwise_function(funcs: Sequence[Callable[[Partition], Laurent]]) -> Callable[[Partition], Laurent]:
    def f(lam):
        out = Laurent.constant(1)
        for g in funcs:
            out = out * g(lam)
        return out

    return f


def kappa_row(funcs: Sequence[Callable[[Partition], Laurent]]) -> RowKernel:
    """``κ^row(x_1, …, x_n)``: pointwise moments, ``⊗`` products."""
    return partition_cumulant(
        lambda S: SourceKernel(pointwise_function([funcs[i] for i in sorted(S)])),
        range(len(funcs)),
        separate_product,
    )


def kappa_dot_row(*pis) -> RowKernel:
    """``κ_•^row(Ch_{π_1}, …)``: moments ``Ch_{concat}``, ``⊗`` products."""
    pis = [Partition(p) for p in pis]
    return partition_cumulant(
        lambda S: ch_kernel(concat(*(pis[i] for i in sorted(S)))),
        range(len(pis)),
        separate_product,
    )


# --- extension and differences --------------------------------------------

TupleFunction = Callable[[tuple[int, ...]], Laurent]


def sym_extension(F: Callable[[Partition], Laurent], xs: Sequence[int]) -> Laurent:
    """``F^sym(ξ)``: evaluate ``F`` at ``ξ`` sorted decreasingly (zeros are empty rows)."""
    if any(x < 0 for x in xs):
        raise ValueError("F^sym is defined on non-negative integers")
    return F(Partition(x for x in xs if x))


def on_tuples(F: Callable[[Partition], Laurent]) -> TupleFunction:
    return lambda xs: sym_extension(F, xs)


def delta_operator(G: TupleFunction, j: int) -> TupleFunction:
    """Forward difference in the ``j``-th argument (rows are numbered from 1)."""
    if j < 1:
        raise ValueError("row indices start at 1")

    def D(xs):
        xs = tuple(xs) + (0,) * max(0, j - len(xs))
        bumped = xs[: j - 1] + (xs[j - 1] + 1,) + xs[j:]
        return G(bumped) - G(xs)

    return D


def iterated_difference(F: Callable[[Partition], Laurent], xs: Sequence[int], k: int) -> Laurent:
    """``Δ_{λ_1} ⋯ Δ_{λ_k} F^sym(ξ)`` by inclusion–exclusion over the bumped rows."""
    xs = tuple(xs) + (0,) * max(0, k - len(xs))
    out = ZERO
    for s in range(k + 1):
        for S in combinations(range(k), s):
            ys = list(xs)
            for i in S:
                ys[i] += 1
            v = sym_extension(F, ys)
            out = out + v if (k - s) % 2 == 0 else out - v
    return out


def _diagrams_with_rows(max_size: int, rows: int) -> list[Partition]:
    return [lam for n in range(max_size + 1) for lam in partitions_of(n) if lam.length() <= rows]


def z3_points(n: int, r: int, variant: str) -> list[tuple[int, Partition]]:
    """The ``(k, λ)`` pairs at which the top-key equation is required."""
    if variant not in ("original", "alternative"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "original" and r < 1:
        raise ValueError("the original variant needs r ≥ 1")
    if n < 0 or r < 0:
        raise ValueError("n and r are non-negative")
    pts = []
    for k in range(r, (n + r) // 2 + 1):
        bound = n + r - 2 * k
        if variant == "original" and k == r:
            bound -= 1
        pts.extend((k, lam) for lam in _diagrams_with_rows(bound, k))
    return pts


def verify_Z3(F: Callable[[Partition], Laurent], n: int, r: int, variant: str = "original") -> Report:
    """``[A^{n+r−2k}] Δ_{λ_1} ⋯ Δ_{λ_k} F^sym(λ) = 0`` on the prescribed ``(k, λ)``."""
    rep = Report("Z3" if variant == "original" else "Z3a", {"n": n, "r": r, "variant": variant})
    for k, lam in z3_points(n, r, variant):
        rep.probes += 1
        c = iterated_difference(F, tuple(lam), k).coefficient_at(n + r - 2 * k)
        if c:
            rep.violation(k=k, lam=lam.text(), coefficient=str(c))
    return rep


def z3_parameters(pis: Sequence, j: int, application: int) -> tuple[int, int, str]:
    """``(n, r, variant)`` for the inductive step from degree ``d − 2j`` of ``κ_•``.

    ``n = Σ|π_i| − j`` and ``r = Σℓ(π_i) − j`` for the first step (original
    variant when ``j = 0``); the second step lowers ``r`` by one and always
    uses the alternative variant.
    """
    pis = [Partition(p) for p in pis]
    n = sum(p.size() for p in pis) - j
    r = sum(p.length() for p in pis) - j
    if application == 1:
        return n, r, "original" if j == 0 else "alternative"
    if application == 2:
        return n, r - 1, "alternative"
    raise ValueError("application is 1 or 2")


def verify_main_theorem_conditions(*pis) -> Report:
    """Run the Z3 / Z3a checks of both inductive steps for ``F = κ_•(Ch_{π_1}, …)``."""
    from .cumulants import kappa_dot

    pis = [Partition(p) for p in pis]
    F = expansion_function(kappa_dot(*pis))
    rep = Report("z3", {"tuple": tuple_text(pis)})
    for j in range(len(pis) - 1):
        for application in (1, 2):
            n, r, variant = z3_parameters(pis, j, application)
            sub = verify_Z3(F, n, r, variant)
            rep.merge(sub)
            for v in sub.violations:
                v.update(j=j, application=application, n=n, r=r)
    return rep


# --- lemma checks -----------------------------------------------------------


def verify_vanishing_kappa_row(*pis) -> Report:
    """``κ_•^row(Ch_{π_1}, …)(λ) = 0`` for every ``|λ| < Σ|π_i|``."""
    pis = [Partition(p) for p in pis]
    K = kappa_dot_row(*pis)
    rep = Report("vanishing", {"tuple": tuple_text(pis)})
    for n in range(sum(p.size() for p in pis)):
        for lam in partitions_of(n):
            rep.probes += 1
            v = evaluate_kernel(K, lam)
            if v:
                rep.violation(lam=lam.text(), value=v.text())
    return rep


def verify_cool_vanishing(pi, sigma, extra_sizes: int = 0) -> Report:
    """``(Ch_π ⊗ Ch_σ)(λ) = 0`` for ``|λ| < |π| + |σ|``, on values and on kernel entries."""
    pi, sigma = Partition(pi), Partition(sigma)
    K = separate_product(ch_kernel(pi), ch_kernel(sigma))
    threshold = pi.size() + sigma.size()
    rep = Report("cool-vanishing", {"pi": pi.text(), "sigma": sigma.text()})
    for n in range(threshold):
        for lam in partitions_of(n):
            rep.probes += 2
            if evaluate_kernel(K, lam):
                rep.violation(lam=lam.text(), where="value")
            if K.value(tuple(lam)):
                rep.violation(lam=lam.text(), where="kernel")
    return rep


def verify_reconstruction(pi, size_limit: int) -> Report:
    pi = Partition(pi)
    K = ch_kernel(pi)
    rep = Report("reconstruction", {"pi": pi.text(), "size_limit": size_limit})
    for n in range(size_limit + 1):
        for lam in partitions_of(n):
            rep.probes += 1
            try:
                evaluate_kernel(K, lam)
            except ReconstructionMismatch as exc:
                rep.violation(lam=lam.text(), error=str(exc))
    return rep


def connected_sum(kernels: Sequence[FixedOrderKernel], lam) -> Laurent:
    """Right-hand side of the explicit ``κ^row`` formula: sum over connected index families."""
    lam = tuple(Partition(lam))
    rows = range(len(lam))
    out = ZERO
    choices = [list(combinations(rows, k.order)) for k in kernels]
    for J in product(*choices):
        if len(_components([set(j) for j in J])) != 1:
            continue
        term = Laurent.constant(1)
        for k, j in zip(kernels, J):
            term = term * k.g(_canon(lam[i] for i in j))
            if not term:
                break
        out = out + term
    return out


def verify_kernel_cumulant_formula(kernels: Sequence[FixedOrderKernel], size_limit: int = 6) -> Report:
    """``κ^row`` by the cumulant recursion versus the connected-family sum."""
    rep = Report("cumulants-concretely", {"orders": [k.order for k in kernels], "size_limit": size_limit})
    funcs = [as_function(k) for k in kernels]
    K = kappa_row(funcs)
    for n in range(size_limit + 1):
        for lam in partitions_of(n):
            rep.probes += 1
            a = evaluate_kernel(K, lam)
            b = connected_sum(kernels, lam)
            if a != b:
                rep.violation(lam=lam.text(), recursion=a.text(), connected=b.text())
    return rep


def _components(sets: Sequence[set]) -> list[set[int]]:
    parent = list(range(len(sets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            if sets[a] & sets[b]:
                parent[find(a)] = find(b)
    groups: dict[int, set[int]] = {}
    for i in range(len(sets)):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def union_bound_holds(sets: Sequence[set]) -> bool:
    """``|⋃ J^{(a)}| ≤ Σ|J^{(a)}| + c(𝒢) − n`` for the overlap graph ``𝒢``."""
    union = set().union(*sets) if sets else set()
    return len(union) <= sum(len(s) for s in sets) + len(_components(sets)) - len(sets)


def verify_connected_components(trials: int = 500, seed: int = 0, universe: int = 6, max_sets: int = 4) -> Report:
    rng = random.Random(seed)
    rep = Report("connected-components", {"trials": trials, "seed": seed})
    for _ in range(trials):
        n = rng.randint(1, max_sets)
        sets = [set(rng.sample(range(universe), rng.randint(1, universe))) for _ in range(n)]
        rep.probes += 1
        if not union_bound_holds(sets):
            rep.violation(sets=[sorted(s) for s in sets])
    return rep


def row_degree_probe(K: RowKernel, max_rows: int = 3, max_size: int = 6):
    """Smallest ``d`` with ``deg f_r(X) ≤ d − 2r`` on every probed multiset (a probe-limited estimate)."""
    best = NEG_INFINITY
    for n in range(max_size + 1):
        for lam in partitions_of(n):
            if lam.length() <= max_rows:
                v = K.value(tuple(lam))
                if v:
                    best = max(best, v.upper_degree() + 2 * lam.length())
    return best


def random_kernel(degree: int, max_order: int = 3, seed: int = 0) -> TableKernel:
    """Symmetric polynomial kernel with ``deg f_r ≤ degree − 2r`` and random rational coefficients."""
    rng = random.Random(seed)
    terms_by_order = {}
    for r in range(max_order + 1):
        top = degree - 2 * r
        if top < -4:
            continue
        terms_by_order[r] = [
            (Fraction(rng.randint(-5, 5), rng.randint(1, 3)), rng.randint(top - 3, top), rng.randint(0, 2))
            for _ in range(3)
        ]

    def f(X):
        out = ZERO
        for c, e, p in terms_by_order.get(len(X), ()):
            # power sum p_p(X) keeps f symmetric; the factor Π x vanishes on zero rows
            ps = sum(x**p for x in X)
            prod_x = 1
            for x in X:
                prod_x *= x
            out = out + Laurent.monomial(c * ps * prod_x, e)
        return out

    return TableKernel(f)


def verify_small_degree_killed(K: RowKernel, d: int, max_k: int = 3, max_size: int = 5) -> Report:
    """``[A^{d−2k}] Δ_{λ_1} ⋯ Δ_{λ_k} F^sym(λ) = 0`` for a kernel of degree ``≤ d − 1``."""
    F = as_function(K)
    rep = Report("small-degree-killed", {"d": d, "max_k": max_k, "max_size": max_size})
    for k in range(max_k + 1):
        for n in range(max_size + 1):
            for lam in partitions_of(n):
                xs = tuple(lam) + (0,) * max(0, k - lam.length())
                rep.probes += 1
                c = iterated_difference(F, xs, k).coefficient_at(d - 2 * k)
                if c:
                    rep.violation(k=k, lam=lam.text(), coefficient=str(c))
    return rep
