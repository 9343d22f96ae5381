"""Free cumulants of anisotropic Young diagrams and Kerov–Lassalle polynomials.

The diagram is drawn with boxes of width ``A`` and height ``1/A`` and its
profile is read in the coordinate ``u = horizontal − vertical``.  The local
minima ``x_i`` and maxima ``y_j`` of the profile interlace; the transition
measure puts weight ``Π_j (x_i − y_j) / Π_{j≠i} (x_i − x_k)`` on ``x_i``.
Free cumulants ``R_k`` are the non-crossing cumulants of that measure.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterable

from .algebra import ONE, ZERO, Echelon, InconsistentSystemError, Laurent, RationalFunction, gamma_power
from .basis import EvaluableFunction
from .combinatorics import Partition, partitions_of
from .jack import SIZE_BUDGET, BudgetExceededError
from .reports import Report


class DegenerateMeasureError(ArithmeticError):
    pass


class NonPolynomialMomentError(ArithmeticError):
    pass


def corner_coordinates(lam) -> tuple[list[Laurent], list[Laurent]]:
    """``(minima, maxima)`` of the profile, both listed from left to right."""
    lam = Partition(lam)
    rows = list(lam) + [0]
    minima, maxima = [], []
    for i in range(len(rows), 0, -1):
        li = rows[i - 1]
        if i == 1 or li < rows[i - 2]:
            minima.append(Laurent({1: li, -1: -(i - 1)}))
        if i <= len(lam) and li > rows[i]:
            maxima.append(Laurent({1: li, -1: -i}))
    return minima, maxima


@dataclass(frozen=True)
class TransitionMeasure:
    atoms: tuple[tuple[RationalFunction, RationalFunction], ...]
    maxima: tuple[Laurent, ...]

    def total_weight(self) -> RationalFunction:
        return sum((w for _, w in self.atoms), RationalFunction.of(0))


def transition_measure(lam) -> TransitionMeasure:
    minima, maxima = corner_coordinates(lam)
    atoms = []
    for i, x in enumerate(minima):
        num = prod((x - y for y in maxima), start=ONE)
        den = prod((x - z for k, z in enumerate(minima) if k != i), start=ONE)
        if den.is_zero():
            raise DegenerateMeasureError(f"coinciding minima for {Partition(lam)}")
        atoms.append((RationalFunction(x), RationalFunction(num, den)))
    return TransitionMeasure(tuple(atoms), tuple(maxima))


def moments(mu: TransitionMeasure, up_to: int) -> list[Laurent]:
    """``M_0, …, M_{up_to}``; each must cancel to a Laurent polynomial."""
    out = []
    powers = [RationalFunction.of(1) for _ in mu.atoms]
    for j in range(up_to + 1):
        m = sum((w * p for (_, w), p in zip(mu.atoms, powers)), RationalFunction.of(0))
        if not m.is_laurent():
            raise NonPolynomialMomentError(f"moment M_{j} does not cancel: {m!r}")
        out.append(m.to_laurent())
        powers = [p * x for (x, _), p in zip(mu.atoms, powers)]
    return out


def moments_from_corners(lam, up_to: int) -> list[Laurent]:
    """Same moments via ``Σ_j M_j t^{j+1} = t Π(1 − y t) / Π(1 − x t)`` as a power series."""
    minima, maxima = corner_coordinates(lam)
    series = [ONE] + [ZERO] * up_to
    for y in maxima:
        series = [series[k] - (y * series[k - 1] if k else ZERO) for k in range(up_to + 1)]
    for x in minima:
        # divide by (1 − x t): s_k += x s_{k−1}
        for k in range(1, up_to + 1):
            series[k] = series[k] + x * series[k - 1]
    return series


def _types(n: int) -> list[Partition]:
    return partitions_of(n)


def _nc_type_count(block_sizes: Partition) -> int:
    """Number of non-crossing partitions of ``[n]`` with the given block sizes."""
    n, k = block_sizes.size(), block_sizes.length()
    den = factorial(n - k + 1)
    for i in set(block_sizes):
        den *= factorial(block_sizes.multiplicity(i))
    return factorial(n) // den


def free_cumulants_from_moments(ms: list[Laurent]) -> list[Laurent]:
    """``R_0 (unused), R_1, …`` from ``M_n = Σ_{ν ∈ NC(n)} Π_b R_{|b|}``."""
    R = [ZERO] * len(ms)
    for n in range(1, len(ms)):
        val = ms[n]
        for t in _types(n):
            if t.length() < 2:
                continue
            term = prod((R[b] for b in t), start=ONE)
            if term:
                val = val - term * _nc_type_count(t)
        R[n] = val
    return R


_lock = threading.Lock()
_memo: dict[Partition, list[Laurent]] = {}


def free_cumulants(lam, up_to: int) -> list[Laurent]:
    lam = Partition(lam)
    if lam.size() > SIZE_BUDGET:
        raise BudgetExceededError(f"|λ| = {lam.size()} exceeds the size budget {SIZE_BUDGET}")
    cached = _memo.get(lam)
    if cached is not None and len(cached) > up_to:
        return cached[: up_to + 1]
    R = free_cumulants_from_moments(moments(transition_measure(lam), up_to))
    with _lock:
        _memo[lam] = R
    return R


def free_cumulant(k: int, lam) -> Laurent:
    if k < 1:
        raise ValueError("free cumulants are indexed from 1")
    return free_cumulants(lam, k)[k]


# --- Kerov–Lassalle polynomials ------------------------------------------

Monomial = tuple[int, tuple[int, ...]]


def _sub(n: int) -> str:
    return "R" + "".join("₀₁₂₃₄₅₆₇₈₉"[int(c)] for c in str(n))


class KLPolynomial:
    """Polynomial in ``γ, R_2, R_3, …``; keys are ``(p, cumulant indices decreasing)``."""

    def __init__(self, terms: dict[tuple[int, Iterable[int]], Fraction | int] | None = None):
        t = {}
        for (p, ks), c in (terms or {}).items():
            if c:
                ks = tuple(sorted(ks, reverse=True))
                if any(k < 2 for k in ks):
                    raise ValueError("free cumulant indices are at least 2")
                t[(p, ks)] = t.get((p, ks), 0) + Fraction(c)
        self.terms = {k: v for k, v in t.items() if v}

    def __eq__(self, other):
        return isinstance(other, KLPolynomial) and self.terms == other.terms

    def __neg__(self):
        return KLPolynomial({k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "KLPolynomial":
        return KLPolynomial({k: v * c for k, v in self.terms.items()})

    def degree(self):
        return max((p + sum(ks) for p, ks in self.terms), default=float("-inf"))

    def ordered(self) -> list[Monomial]:
        """Graded (decreasing), then by γ-power, then by the cumulant indices."""
        return sorted(self.terms, key=lambda m: (-(m[0] + sum(m[1])), m[0], tuple(-k for k in m[1])))

    def evaluate(self, lam) -> Laurent:
        top = max((max(ks, default=0) for _, ks in self.terms), default=0)
        R = free_cumulants(lam, max(top, 1))
        out = ZERO
        for (p, ks), c in self.terms.items():
            out = out + prod((R[k] for k in ks), start=gamma_power(p)) * c
        return out

    def text(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, m in enumerate(self.ordered()):
            p, ks = m
            c = self.terms[m]
            factors = []
            for k in sorted(set(ks), reverse=True):
                e = ks.count(k)
                factors.append(_sub(k) + (f"^{e}" if e > 1 else ""))
            if p:
                factors.append("γ" + (f"^{p}" if p > 1 else ""))
            mag = abs(c)
            body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
            sign = "-" if c < 0 else "+"
            out += (("-" if sign == "-" else "") + body) if i == 0 else f" {sign} {body}"
        return out

    __str__ = text

    def __repr__(self):
        return f"KLPolynomial({self.text()})"

    def to_json(self) -> list[dict]:
        return [
            {"gamma_power": p, "cumulant_indices": list(ks), "coeff": str(self.terms[(p, ks)])}
            for p, ks in self.ordered()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "KLPolynomial":
        return cls({(d["gamma_power"], tuple(d["cumulant_indices"])): Fraction(d["coeff"]) for d in data})


def kl_monomials(d: int) -> list[Monomial]:
    out = []
    for total in range(d + 1):
        for ks in partitions_of(total):
            if all(k >= 2 for k in ks):
                for p in range(d - total + 1):
                    out.append((p, tuple(ks)))
    return out


class KLUnderdetermined(ArithmeticError):
    pass


class KLInconsistent(ArithmeticError):
    pass


class KLVerifyFailure(ArithmeticError):
    pass


def _monomial_value(m: Monomial, R: list[Laurent]) -> Laurent:
    p, ks = m
    return prod((R[k] for k in ks), start=gamma_power(p))


def kerov_lassalle_solve(F: EvaluableFunction, budget: int = SIZE_BUDGET) -> KLPolynomial:
    """Coefficients of ``F`` on ``γ^p Π R_{k_i}`` with ``p + Σk_i ≤ F.degree``.

    Evaluations start with every diagram of size ``≤ d``; sizes are appended one
    at a time while the system is underdetermined, and the next size is held
    out for verification.
    """
    d = F.degree
    monos = kl_monomials(d)
    ech = Echelon(len(monos))
    rhs = len(monos)
    values: dict[Partition, Laurent] = {}
    size = -1

    def add_size(n):
        for lam in partitions_of(n):
            R = free_cumulants(lam, max(d, 1))
            v = values[lam] = F(lam)
            cols = [_monomial_value(m, R) for m in monos]
            exps = {e for e, _ in v.items()}
            for c in cols:
                exps.update(e for e, _ in c.items())
            for e in sorted(exps):
                row = {j: c.coefficient_at(e) for j, c in enumerate(cols) if c.coefficient_at(e)}
                if v.coefficient_at(e):
                    row[rhs] = v.coefficient_at(e)
                if row:
                    ech.add(row)

    try:
        while size < d or ech.rank < len(monos):
            size += 1
            if size >= budget:
                raise KLUnderdetermined(
                    f"rank {ech.rank} < {len(monos)} unknowns after all diagrams of size ≤ {size - 1}"
                )
            add_size(size)
        sol = ech.solve()
    except InconsistentSystemError as exc:
        raise KLInconsistent(f"no polynomial of degree ≤ {d} reproduces the function") from exc
    result = KLPolynomial({m: c for m, c in zip(monos, sol)})
    check = size + 1
    if check <= budget:
        for lam in partitions_of(check):
            if result.evaluate(lam) != F(lam):
                raise KLVerifyFailure(f"held-out diagram {lam} disagrees")
    return result


def kl_violations(poly: KLPolynomial, label: str, sign: int = 1) -> list[dict]:
    bad = []
    for (p, ks), c in poly.terms.items():
        c = sign * c
        if c < 0 or c.denominator != 1:
            bad.append({"target": label, "gamma_power": p, "cumulant_indices": list(ks), "coeff": str(c)})
    return bad


def scan_kerov_lassalle_positivity(max_part: int = 5, max_cumulant_size: int | None = None) -> Report:
    """Single-row characters ``Ch_k`` (``k ≤ max_part``) and signed cumulants of single-row tuples."""
    from .basis import as_function
    from .characters import ch_classical
    from .cumulants import kappa_dot

    limit = max_part if max_cumulant_size is None else max_cumulant_size
    rep = Report("kl-positivity", {"max": max_part, "max_cumulant_size": limit})
    for k in range(1, max_part + 1):
        rep.probes += 1
        poly = kerov_lassalle_solve(EvaluableFunction(lambda lam, k=k: ch_classical((k,), lam), k + 1))
        rep.violations.extend(kl_violations(poly, f"Ch[{k}]"))
    for rows in _row_tuples(limit):
        rep.probes += 1
        e = kappa_dot(*[(k,) for k in rows])
        poly = kerov_lassalle_solve(as_function(e))
        rep.violations.extend(kl_violations(poly, "κ " + " ".join(f"[{k}]" for k in rows), (-1) ** (len(rows) - 1)))
    return rep


def _row_tuples(max_size: int) -> list[tuple[int, ...]]:
    out = []

    def go(prefix, cap, left):
        if len(prefix) >= 2:
            out.append(tuple(prefix))
        for k in range(min(cap, left), 0, -1):
            go(prefix + [k], k, left - k)

    go([], max_size, max_size)
    return out


def clear_memory() -> None:
    with _lock:
        _memo.clear()
