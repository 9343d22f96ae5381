"""Expansions in the linear basis ``γ^p Ch_μ`` of α-polynomial functions.

The filtration degree of ``γ^p Ch_μ`` is ``p + |μ| + ℓ(μ)``.  Expanding a
function means solving for rational coefficients by matching every power of
``A`` on a set of Young diagrams.  Because ``Ch_μ(λ) = 0`` for ``|λ| < |μ|``
and the square blocks ``[Ch_μ(λ)]_{|μ|=|λ|=n}`` are invertible, the system is
block lower-triangular by size, and it is solved one size at a time.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .algebra import (
    NEG_INFINITY,
    ZERO,
    DeltaPoly,
    Echelon,
    GammaPoly,
    InconsistentSystemError,
    Laurent,
    UnderdeterminedSystemError,
    gamma_power,
    gamma_to_delta,
)
from .cache import cache_get, cache_put
from .characters import ch_classical
from .combinatorics import Partition, concat, partitions_of
from .jack import SIZE_BUDGET, BudgetExceededError

Term = tuple[int, Partition]


class ChExpansion:
    """Finite sum ``Σ c_{p,μ} γ^p Ch_μ`` with rational coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple[int, Iterable[int]], Fraction | int] | None = None):
        t: dict[Term, Fraction] = {}
        for (p, mu), c in (terms or {}).items():
            if c:
                key = (int(p), Partition(mu))
                t[key] = t.get(key, 0) + Fraction(c)
        self._t = {k: v for k, v in t.items() if v}

    @classmethod
    def _raw(cls, t: dict[Term, Fraction]) -> "ChExpansion":
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def basis(cls, mu: Iterable[int] = (), p: int = 0, coeff: Fraction | int = 1) -> "ChExpansion":
        return cls({(p, Partition(mu)): coeff})

    @classmethod
    def one(cls) -> "ChExpansion":
        return cls.basis(())

    @classmethod
    def from_gamma_polys(cls, polys: Mapping[Iterable[int], GammaPoly]) -> "ChExpansion":
        return cls({(p, mu): c for mu, g in polys.items() for p, c in g.items()})

    @classmethod
    def from_delta_polys(cls, polys: Mapping[Iterable[int], DeltaPoly]) -> "ChExpansion":
        return cls(
            {(p, mu): (-c if p % 2 else c) for mu, d in polys.items() for p, c in d.items()}
        )

    def terms(self) -> dict[Term, Fraction]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def degree(self):
        """Filtration degree ``max(p + |μ| + ℓ(μ))``; ``NEG_INFINITY`` for zero."""
        if not self._t:
            return NEG_INFINITY
        return max(p + mu.size() + mu.length() for p, mu in self._t)

    def max_size(self) -> int:
        return max((mu.size() for _, mu in self._t), default=0)

    def __add__(self, other: "ChExpansion") -> "ChExpansion":
        t = dict(self._t)
        for k, v in other._t.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return ChExpansion._raw(t)

    def __neg__(self):
        return ChExpansion._raw({k: -v for k, v in self._t.items()})

    def __sub__(self, other: "ChExpansion") -> "ChExpansion":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "ChExpansion":
        if not c:
            return ChExpansion()
        return ChExpansion._raw({k: v * c for k, v in self._t.items()})

    def __eq__(self, other):
        return isinstance(other, ChExpansion) and self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def gamma_polys(self) -> dict[Partition, GammaPoly]:
        out: dict[Partition, dict[int, Fraction]] = {}
        for (p, mu), c in self._t.items():
            out.setdefault(mu, {})[p] = c
        return {mu: GammaPoly(c) for mu, c in out.items()}

    def delta_polys(self) -> dict[Partition, DeltaPoly]:
        return {mu: gamma_to_delta(g) for mu, g in self.gamma_polys().items()}

    def _ordered(self) -> list[Partition]:
        polys = self.gamma_polys()
        return sorted(
            polys,
            key=lambda mu: (-(mu.size() + mu.length() + polys[mu].degree()), -mu.size(), mu),
        )

    def text(self, variable: str = "delta") -> str:
        """``"(6*δ^2 + 3)*Ch[3] + Ch[3,3] + …"`` in δ (default) or γ form."""
        if not self._t:
            return "0"
        polys = self.delta_polys() if variable == "delta" else self.gamma_polys()
        parts = []
        for mu in self._ordered():
            c = polys[mu]
            s = c.text()
            label = f"Ch{mu.text()}"
            if len(c.coeffs()) > 1:
                parts.append(("+", f"({s})*{label}"))
                continue
            sign, s = ("-", s[1:]) if s.startswith("-") else ("+", s)
            parts.append((sign, label if s == "1" else f"{s}*{label}"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = text

    def __repr__(self):
        return f"ChExpansion({self.text('gamma')})"

    def to_json(self) -> list[dict]:
        return [
            {"p": p, "mu": list(mu), "coeff": str(c)}
            for (p, mu), c in sorted(self._t.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "ChExpansion":
        return cls({(d["p"], tuple(d["mu"])): Fraction(d["coeff"]) for d in data})


def basis_value(p: int, mu: Partition, lam: Partition, budget: int = SIZE_BUDGET) -> Laurent:
    ch = ch_classical(mu, lam, budget)
    return ch * gamma_power(p) if p and ch else ch


def evaluate(e: ChExpansion, lam, budget: int = SIZE_BUDGET) -> Laurent:
    lam = Partition(lam)
    if lam.size() > budget:
        raise BudgetExceededError(f"|λ| = {lam.size()} exceeds the size budget {budget}")
    out = ZERO
    for (p, mu), c in e.items():
        if mu.size() <= lam.size():
            out = out + basis_value(p, mu, lam, budget) * c
    return out


@dataclass
class EvaluableFunction:
    """A function on Young diagrams together with a declared filtration degree bound.

    ``max_size``, when known, bounds ``|μ|`` over the basis elements that can
    occur (for instance the row-polynomial degree); it defaults to ``degree``.
    """

    func: Callable[[Partition], Laurent]
    degree: int
    max_size: int | None = None

    def __call__(self, lam: Partition) -> Laurent:
        return self.func(Partition(lam))


class ExpansionError(ArithmeticError):
    pass


class ExpansionInconsistent(ExpansionError):
    """The function is not in the span of the candidate basis elements."""


class ExpansionUnderdetermined(ExpansionError):
    pass


class ExpansionVerifyFailure(ExpansionError):
    """The solved expansion disagrees with the function on held-out diagrams."""


def candidates(n: int, degree: int) -> list[Term]:
    """Basis labels ``(p, μ)`` with ``|μ| = n`` and filtration degree ``≤ degree``."""
    out = []
    for mu in partitions_of(n):
        for p in range(degree - n - mu.length() + 1):
            out.append((p, mu))
    return out


def expand_in_ch_basis(
    F: EvaluableFunction, verify_sizes: int = 2, budget: int = SIZE_BUDGET
) -> ChExpansion:
    """Unique expansion of ``F`` in the basis ``γ^p Ch_μ`` up to degree ``F.degree``."""
    d = F.degree
    cap = F.max_size if F.max_size is not None else d
    cap = max(0, min(cap, d))
    if cap > budget:
        raise BudgetExceededError(f"expansion needs diagrams of size {cap} > budget {budget}")
    found: dict[Term, Fraction] = {}
    values: dict[Partition, Laurent] = {}

    def residual(lam: Partition) -> Laurent:
        if lam not in values:
            values[lam] = F(lam)
        r = values[lam]
        for (p, mu), c in found.items():
            if mu.size() <= lam.size():
                r = r - basis_value(p, mu, lam, budget) * c
        return r

    for n in range(cap + 1):
        unknowns = candidates(n, d)
        diagrams = partitions_of(n)
        if not unknowns:
            for lam in diagrams:
                if residual(lam):
                    raise ExpansionInconsistent(f"nonzero residual at {lam} with no candidates of size {n}")
            continue
        ech = Echelon(len(unknowns))
        rhs_col = len(unknowns)
        for lam in diagrams:
            r = residual(lam)
            cols = [basis_value(p, mu, lam, budget) for p, mu in unknowns]
            exps = set(k for k, _ in r.items())
            for v in cols:
                exps.update(k for k, _ in v.items())
            for e in sorted(exps):
                row = {j: v.coefficient_at(e) for j, v in enumerate(cols) if v.coefficient_at(e)}
                rv = r.coefficient_at(e)
                if rv:
                    row[rhs_col] = rv
                if row:
                    ech.add(row)
        try:
            sol = ech.solve()
        except InconsistentSystemError as exc:
            raise ExpansionInconsistent(f"no expansion of degree ≤ {d} matches at size {n}") from exc
        except UnderdeterminedSystemError as exc:
            raise ExpansionUnderdetermined(
                f"size-{n} block is underdetermined; free: {[unknowns[j] for j in exc.free_columns]}"
            ) from exc
        for term, c in zip(unknowns, sol):
            if c:
                found[term] = c
    for n in range(cap + 1, min(cap + verify_sizes, budget) + 1):
        for lam in partitions_of(n):
            if residual(lam):
                raise ExpansionVerifyFailure(f"expansion disagrees with the function at {lam}")
    return ChExpansion._raw(found)


# --- products -------------------------------------------------------------

_lock = threading.Lock()
_structure: dict[tuple[Partition, Partition], ChExpansion] = {}


def _deg(mu: Partition) -> int:
    return mu.size() + mu.length()


def product_of_characters(pi, sigma, budget: int = SIZE_BUDGET) -> ChExpansion:
    """``Ch_π · Ch_σ`` (pointwise) in the basis ``γ^p Ch_μ``; memoized."""
    pi, sigma = Partition(pi), Partition(sigma)
    key = (pi, sigma) if pi <= sigma else (sigma, pi)
    e = _structure.get(key)
    if e is not None:
        return e
    cache_key = f"structure:{key[0].text()}|{key[1].text()}"
    cached = None if not pi or not sigma else cache_get(cache_key)
    if not pi or not sigma:
        e = ChExpansion.basis(pi or sigma)
    elif cached is not None:
        e = ChExpansion.from_json(cached)
    else:
        F = EvaluableFunction(
            lambda lam: ch_classical(pi, lam, budget) * ch_classical(sigma, lam, budget),
            degree=_deg(pi) + _deg(sigma),
            # the row-polynomial degree of a product is |π| + |σ|, and by (K2)
            # only Ch_μ with |μ| ≤ |π| + |σ| can carry it
            max_size=pi.size() + sigma.size(),
        )
        e = expand_in_ch_basis(F, budget=budget)
        cache_put(cache_key, e.to_json())
    with _lock:
        _structure[key] = e
    return e


def structure_coefficients(pi, sigma, budget: int = SIZE_BUDGET) -> dict[Partition, DeltaPoly]:
    """``g^μ_{π,σ}(δ)`` with ``Ch_π Ch_σ = Σ_μ g^μ_{π,σ}(δ) Ch_μ``."""
    return product_of_characters(pi, sigma, budget).delta_polys()


def pointwise_product(a: ChExpansion, b: ChExpansion, budget: int = SIZE_BUDGET) -> ChExpansion:
    acc: dict[Term, Fraction] = {}
    for (p1, mu1), c1 in a.items():
        for (p2, mu2), c2 in b.items():
            c = c1 * c2
            for (q, nu), g in product_of_characters(mu1, mu2, budget).items():
                key = (p1 + p2 + q, nu)
                acc[key] = acc.get(key, 0) + c * g
    return ChExpansion._raw({k: v for k, v in acc.items() if v})


def disjoint_product(a: ChExpansion, b: ChExpansion) -> ChExpansion:
    """``(γ^p Ch_π) • (γ^q Ch_σ) = γ^{p+q} Ch_{πσ}``, extended bilinearly."""
    acc: dict[Term, Fraction] = {}
    for (p1, mu1), c1 in a.items():
        for (p2, mu2), c2 in b.items():
            key = (p1 + p2, concat(mu1, mu2))
            acc[key] = acc.get(key, 0) + c1 * c2
    return ChExpansion._raw({k: v for k, v in acc.items() if v})


def leading_coefficient_check(pi, sigma) -> bool:
    """``g^{πσ}_{π,σ} = 1``."""
    g = structure_coefficients(pi, sigma)
    return g.get(concat(pi, sigma)) == DeltaPoly({0: 1})


def as_function(e: ChExpansion, budget: int = SIZE_BUDGET) -> EvaluableFunction:
    return EvaluableFunction(lambda lam: evaluate(e, lam, budget), degree=max(e.degree(), 0), max_size=e.max_size())


def clear_memory() -> None:
    with _lock:
        _structure.clear()
