"""Jack symmetric functions ``J_λ`` in the power-sum basis.

``J_λ = Σ_π θ_π(λ) p_π`` with each ``θ_π(λ)`` a polynomial in ``α``.  For a
fixed size ``n`` all ``J_λ`` are produced together: Gram–Schmidt on the
monomial basis (ordered by a linear extension of dominance) under the
α-deformed Hall product ``<p_λ, p_μ> = δ_{λμ} z_λ α^{ℓ(λ)}``, run at the
integer samples ``α = 1, 2, …, n+2``, then each coefficient is recovered by
interpolation of degree ``≤ n``; the extra sample is a verification point.
The normalization is ``θ_{1^n}(λ) = 1``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from .algebra import AlphaPoly, DegreeExceededError, interpolate_poly
from .cache import cache_get, cache_put
from .combinatorics import Partition, partitions_of, z_factor

SIZE_BUDGET = 10


class BudgetExceededError(ValueError):
    pass


class NormalizationFailure(ArithmeticError):
    pass


class SizeMismatchError(ValueError):
    pass


def _count_assignments(rho: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of maps from the parts of rho to the rows of mu with row sums equal to mu."""

    @lru_cache(maxsize=None)
    def go(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(rho):
            return 1 if not any(remaining) else 0
        total = 0
        part = rho[i]
        for j, cap in enumerate(remaining):
            if cap >= part:
                total += go(i + 1, remaining[:j] + (cap - part,) + remaining[j + 1 :])
        return total

    return go(0, tuple(mu))


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """``L`` with ``p_ρ = Σ_μ L[ρ][μ] m_μ``, indexed in the order of :func:`partitions_of`."""
    parts = partitions_of(n)
    return tuple(tuple(_count_assignments(rho, mu) for mu in parts) for rho in parts)


@lru_cache(maxsize=None)
def m_in_p_basis(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row ``μ`` holds the p-coordinates of ``m_μ`` (inverse of :func:`p_to_m_matrix`)."""
    L = p_to_m_matrix(n)
    size = len(L)
    # L is lower triangular in reverse-lexicographic order
    inv = [[Fraction(0)] * size for _ in range(size)]
    for col in range(size):
        for i in range(col, size):
            acc = Fraction(1 if i == col else 0)
            for k in range(col, i):
                acc -= L[i][k] * inv[k][col]
            inv[i][col] = acc / L[i][i]
    # inv is L^{-1}; m = L^{-1} p means m_μ = Σ_ρ inv[μ][ρ] p_ρ
    return tuple(tuple(row) for row in inv)


def _jack_numeric(n: int, alpha: Fraction) -> list[list[Fraction]]:
    """p-coordinates of every ``J_λ`` (``λ`` in canonical order) at a numeric ``α``."""
    parts = partitions_of(n)
    size = len(parts)
    weights = [z_factor(rho) * alpha ** len(rho) for rho in parts]
    mrows = m_in_p_basis(n)
    ortho: dict[int, tuple[list[Fraction], Fraction]] = {}
    # increasing lexicographic order is a linear extension of dominance
    for idx in range(size - 1, -1, -1):
        m = mrows[idx]
        mw = [m[k] * weights[k] for k in range(size)]
        v = list(m)
        for u, norm in ortho.values():
            c = sum(mw[k] * u[k] for k in range(size) if u[k]) / norm
            if c:
                for k in range(size):
                    if u[k]:
                        v[k] -= c * u[k]
        norm = sum(v[k] * v[k] * weights[k] for k in range(size))
        ortho[idx] = (v, norm)
    out = []
    for idx in range(size):
        v = ortho[idx][0]
        lead = v[size - 1]  # coefficient of p_{1^n}
        if lead == 0:
            raise NormalizationFailure(f"θ_(1^{n})({parts[idx]}) vanishes at α={alpha}")
        out.append([x / lead for x in v])
    return out


class PowerSumExpansion:
    """``Σ_π c_π(α) p_π`` with all ``π`` of one size."""

    def __init__(self, n: int, terms: dict[Partition, AlphaPoly]):
        self.n = n
        self.terms = {Partition(k): v for k, v in terms.items() if v}
        for k in self.terms:
            if k.size() != n:
                raise SizeMismatchError(f"{k} is not a partition of {n}")

    def coefficient(self, pi) -> AlphaPoly:
        return self.terms.get(Partition(pi), AlphaPoly())

    def __eq__(self, other):
        return isinstance(other, PowerSumExpansion) and self.n == other.n and self.terms == other.terms

    def text(self) -> str:
        if self.n == 0:
            return "1" if self.terms else "0"
        out = []
        for pi in sorted(self.terms):
            c = self.terms[pi]
            basis = "p" + pi.text()
            dense = c.coeffs()
            if len(dense) == 1:
                (k, v), = dense.items()
                mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
                sign = "-" if v < 0 else "+"
                mag = abs(v)
                factors = [s for s in ((str(mag) if mag != 1 else ""), mono) if s]
                term = "*".join(factors + [basis])
            else:
                sign, term = "+", f"({c.text()})*{basis}"
            out.append((sign, term))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, term in out[1:]:
            s += f" {sign} {term}"
        return s

    __str__ = text

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": {
                pi.text(): [str(x) for x in c.dense()] for pi, c in sorted(self.terms.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "PowerSumExpansion":
        return cls(
            data["n"],
            {Partition.parse(k): AlphaPoly([Fraction(x) for x in v]) for k, v in data["terms"].items()},
        )


_lock = threading.Lock()
_tables: dict[int, dict[Partition, PowerSumExpansion]] = {}


def _compute_table(n: int) -> dict[Partition, PowerSumExpansion]:
    parts = partitions_of(n)
    if n == 0:
        return {Partition(): PowerSumExpansion(0, {Partition(): AlphaPoly([1])})}
    samples = [Fraction(a) for a in range(1, n + 3)]
    numeric = [_jack_numeric(n, a) for a in samples]
    table = {}
    for i, lam in enumerate(parts):
        terms = {}
        for k, rho in enumerate(parts):
            pts = [(samples[s], numeric[s][i][k]) for s in range(len(samples))]
            try:
                terms[rho] = interpolate_poly(pts, n, cls=AlphaPoly)
            except DegreeExceededError as exc:  # pragma: no cover - would signal a bug
                raise ArithmeticError(f"θ_{rho}({lam}) is not a polynomial of degree ≤ {n}") from exc
        table[lam] = PowerSumExpansion(n, terms)
    return table


def jack_table(n: int, budget: int = SIZE_BUDGET) -> dict[Partition, PowerSumExpansion]:
    """All ``J_λ`` with ``|λ| = n``, memoized in-process and in the optional disk cache."""
    if n > budget:
        raise BudgetExceededError(f"|λ| = {n} exceeds the size budget {budget}")
    table = _tables.get(n)
    if table is not None:
        return table
    with _lock:
        table = _tables.get(n)
        if table is not None:
            return table
        key = f"jack:n={n}"
        cached = cache_get(key)
        if cached is not None:
            table = {Partition.parse(k): PowerSumExpansion.from_json(v) for k, v in cached.items()}
        else:
            table = _compute_table(n)
            cache_put(key, {lam.text(): e.to_json() for lam, e in table.items()})
        _tables[n] = table
        return table


def jack_in_p_basis(lam, budget: int = SIZE_BUDGET) -> PowerSumExpansion:
    lam = Partition(lam)
    return jack_table(lam.size(), budget)[lam]


def theta(pi, lam, budget: int = SIZE_BUDGET) -> AlphaPoly:
    """Unnormalized Jack character: the coefficient of ``p_π`` in ``J_λ``."""
    pi, lam = Partition(pi), Partition(lam)
    if pi.size() != lam.size():
        raise SizeMismatchError(f"|{pi}| != |{lam}|")
    return jack_in_p_basis(lam, budget).coefficient(pi)


def warm(max_size: int, budget: int = SIZE_BUDGET) -> None:
    for n in range(max_size + 1):
        jack_table(n, budget)


def clear_memory() -> None:
    with _lock:
        _tables.clear()
