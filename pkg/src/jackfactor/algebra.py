"""Exact scalar algebra: Laurent polynomials in ``A``, univariate polynomials,
fraction-free linear solving and verified interpolation.

Nothing in here touches floating point.  ``NEG_INFINITY`` is only a sentinel
for the degree of the zero polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

NEG_INFINITY = float("-inf")

Scalar = Union[int, Fraction]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(c: Fraction) -> str:
    c = _q(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Laurent:
    """Sparse Laurent polynomial in the indeterminate ``A`` with rational coefficients.

    Instances are immutable; arithmetic returns new objects.  Plain ints and
    Fractions are accepted as constants on either side of an operator.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    c[int(k)] = _q(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, Fraction]) -> "Laurent":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> "Laurent":
        return cls({k: c})

    # --- inspection ---
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def coefficient_at(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def upper_degree(self):
        return max(self._c) if self._c else NEG_INFINITY

    def lower_degree(self):
        return min(self._c) if self._c else float("inf")

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def at(self, a: Scalar) -> Fraction:
        """Numerical specialization ``A = a`` (``a`` a nonzero rational)."""
        a = _q(a)
        return sum((v * a**k for k, v in self._c.items()), Fraction(0))

    def flip(self) -> "Laurent":
        """The map ``A -> -1/A``: coefficient of ``A^k`` goes to ``(-1)^k`` times ``A^-k``."""
        return Laurent._raw({-k: (-v if k % 2 else v) for k, v in self._c.items()})

    # --- arithmetic ---
    def _coerce(self, other) -> "Laurent | None":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Fraction)):
            return Laurent({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return Laurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Laurent._raw({})
            return Laurent._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        c: dict[int, Fraction] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + v1 * v2
        return Laurent._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``A^k``."""
        return Laurent._raw({e + k: v for e, v in self._c.items()})

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (k, v), = self._c.items()
            return Laurent._raw({k * n: Fraction(1) / v**-n})
        result = Laurent._raw({0: Fraction(1)})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def text(self) -> str:
        """``"c*A^k"`` terms joined by ``" + "``, exponents descending; ``"0"`` if zero."""
        if not self._c:
            return "0"
        return " + ".join(f"{format_rational(self._c[k])}*A^{k}" for k in sorted(self._c, reverse=True))

    __str__ = text

    def __repr__(self):
        return f"Laurent({self.text()})"

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        text = text.strip()
        if text == "0":
            return cls()
        c = {}
        for term in text.split(" + "):
            coef, power = term.split("*A^")
            c[int(power)] = c.get(int(power), 0) + Fraction(coef)
        return cls(c)


A = Laurent({1: 1})
ZERO = Laurent()
ONE = Laurent({0: 1})


def gamma_as_laurent() -> Laurent:
    """``gamma = -A + 1/A``."""
    return Laurent({1: -1, -1: 1})


def delta_as_laurent() -> Laurent:
    """``delta = -gamma = A - 1/A``."""
    return Laurent({1: 1, -1: -1})


def laurent_upper_degree(f: Laurent):
    return f.upper_degree()


def coefficient_at(f: Laurent, k: int) -> Fraction:
    return f.coefficient_at(k)


class Poly:
    """Univariate polynomial with rational coefficients, stored sparsely by degree."""

    __slots__ = ("_c",)
    var = "x"

    def __init__(self, coeffs: Mapping[int, Scalar] | Sequence[Scalar] | None = None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        c = {}
        for k, v in coeffs.items():
            if k < 0:
                raise ValueError("negative degree in a polynomial")
            if v:
                c[int(k)] = _q(v)
        self._c = c

    def _same(self, c: dict) -> "Poly":
        return type(self)(c)

    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def coefficient(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def dense(self) -> list[Fraction]:
        if not self._c:
            return []
        return [self._c.get(k, Fraction(0)) for k in range(max(self._c) + 1)]

    def degree(self):
        return max(self._c) if self._c else NEG_INFINITY

    def items(self):
        return self._c.items()

    def __call__(self, x: Scalar) -> Fraction:
        x = _q(x)
        return sum((v * x**k for k, v in self._c.items()), Fraction(0))

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return self._same({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c.get(k, 0) + v
        return self._same(c)

    __radd__ = __add__

    def __neg__(self):
        return self._same({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._same({k: v * other for k, v in self._c.items()})
        if not isinstance(other, type(self)):
            return NotImplemented
        c: dict[int, Fraction] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + v1 * v2
        return self._same(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self._same({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._c.items())))

    def __bool__(self):
        return bool(self._c)

    def is_nonnegative_integral(self) -> bool:
        return all(v >= 0 and v.denominator == 1 for v in self._c.values())

    def text(self, var: str | None = None) -> str:
        """Human-readable form, highest degree first, e.g. ``"6*δ^2 + 3"``."""
        var = var or self.var
        if not self._c:
            return "0"
        out = ""
        for i, k in enumerate(sorted(self._c, reverse=True)):
            v = self._c[k]
            mag = format_rational(abs(v))
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                term = mag
            elif mag == "1":
                term = mono
            else:
                term = f"{mag}*{mono}"
            if i == 0:
                out = ("-" if v < 0 else "") + term
            else:
                out += (" - " if v < 0 else " + ") + term
        return out

    __str__ = text

    def __repr__(self):
        return f"{type(self).__name__}({self.text()})"


class GammaPoly(Poly):
    """Polynomial in ``gamma``."""

    __slots__ = ()
    var = "γ"


class DeltaPoly(Poly):
    """Polynomial in ``delta = -gamma``."""

    __slots__ = ()
    var = "δ"


class AlphaPoly(Poly):
    """Polynomial in the Jack parameter ``alpha = A^2``."""

    __slots__ = ()
    var = "a"


def gamma_to_delta(g: GammaPoly) -> DeltaPoly:
    return DeltaPoly({k: (-v if k % 2 else v) for k, v in g.items()})


def delta_to_gamma(d: DeltaPoly) -> GammaPoly:
    return GammaPoly({k: (-v if k % 2 else v) for k, v in d.items()})


_GAMMA_POWERS: list[Laurent] = [ONE]


def gamma_power(p: int) -> Laurent:
    while len(_GAMMA_POWERS) <= p:
        _GAMMA_POWERS.append(_GAMMA_POWERS[-1] * gamma_as_laurent())
    return _GAMMA_POWERS[p]


def substitute_gamma(g: GammaPoly) -> Laurent:
    """Evaluate a polynomial in gamma at ``gamma = -A + 1/A``."""
    out = ZERO
    for p, c in g.items():
        out = out + gamma_power(p) * c
    return out


def alpha_to_laurent(f: AlphaPoly, shift: int = 0) -> Laurent:
    """Substitute ``alpha = A^2`` and multiply by ``A^shift``."""
    return Laurent._raw({2 * k + shift: v for k, v in f.items()})


# --- linear algebra -------------------------------------------------------


class LinearSystemError(ArithmeticError):
    pass


class InconsistentSystemError(LinearSystemError):
    """The system has no solution."""


class UnderdeterminedSystemError(LinearSystemError):
    """The solution space has positive dimension.

    ``free_columns`` lists the unknowns left without a pivot; each of them is a
    free direction of the solution space.
    """

    def __init__(self, message: str, free_columns: Sequence[int]):
        super().__init__(message)
        self.free_columns = list(free_columns)


def _integer_row(row: Mapping[int, Scalar]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = lcm(den, _q(v).denominator)
    out = {}
    for k, v in row.items():
        v = _q(v) * den
        if v:
            out[k] = int(v)
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incremental fraction-free row echelon form over the integers.

    Rows are sparse dicts ``{column: value}``; the right-hand side lives in
    column ``ncols``.  Each added row is reduced against the stored pivots by
    cross-multiplication followed by removal of the row content, so no
    rational arithmetic happens until back substitution.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rhs_col = ncols
        self.pivots: dict[int, dict[int, int]] = {}
        self._solution: list[Fraction] | None = None
        self._inconsistent = False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Mapping[int, Scalar]) -> None:
        if self._inconsistent:
            return
        r = _integer_row(row)
        if self._solution is not None:
            # full rank already reached: only verify the row
            lhs = sum((Fraction(v) * self._solution[k] for k, v in r.items() if k != self.rhs_col), Fraction(0))
            if lhs != r.get(self.rhs_col, 0):
                self._inconsistent = True
            return
        while True:
            cols = [k for k in r if k != self.rhs_col]
            if not cols:
                if r.get(self.rhs_col, 0):
                    self._inconsistent = True
                return
            lead = min(cols)
            piv = self.pivots.get(lead)
            if piv is None:
                if r[lead] < 0:
                    r = {k: -v for k, v in r.items()}
                self.pivots[lead] = r
                if len(self.pivots) == self.ncols:
                    self._solution = self._back_substitute()
                return
            a, b = piv[lead], r[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: v * fa for k, v in r.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - fb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new)

    def _back_substitute(self) -> list[Fraction]:
        x = [Fraction(0)] * self.ncols
        for col in sorted(self.pivots, reverse=True):
            row = self.pivots[col]
            acc = Fraction(row.get(self.rhs_col, 0))
            for k, v in row.items():
                if k != col and k != self.rhs_col:
                    acc -= v * x[k]
            x[col] = acc / row[col]
        return x

    def solve(self) -> list[Fraction]:
        if self._inconsistent:
            raise InconsistentSystemError("linear system has no solution")
        if self._solution is not None:
            return list(self._solution)
        free = [c for c in range(self.ncols) if c not in self.pivots]
        if free:
            raise UnderdeterminedSystemError(
                f"solution space has dimension {len(free)}", free
            )
        self._solution = self._back_substitute()
        return list(self._solution)


def solve_linear(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Fraction]:
    """Exact solution of ``matrix @ x = rhs``.

    Raises :class:`InconsistentSystemError` or :class:`UnderdeterminedSystemError`
    when there is no unique solution.
    """
    if len(matrix) != len(rhs):
        raise ValueError("matrix and rhs have different numbers of rows")
    ncols = len(matrix[0]) if matrix else 0
    ech = Echelon(ncols)
    for row, b in zip(matrix, rhs):
        if len(row) != ncols:
            raise ValueError("matrix is not rectangular")
        d = {j: v for j, v in enumerate(row) if v}
        if b:
            d[ncols] = b
        ech.add(d)
    return ech.solve()


class DegreeExceededError(ArithmeticError):
    """Verification points disagree with the interpolant of the requested degree."""


def interpolate_poly(points: Sequence[tuple[Scalar, Scalar]], max_degree: int, cls=Poly) -> Poly:
    """Interpolate through the first ``max_degree + 1`` points; the rest must agree."""
    if len(points) < max_degree + 1:
        raise ValueError("not enough points for the requested degree")
    pts = [(_q(x), _q(y)) for x, y in points]
    base = pts[: max_degree + 1]
    xs = [x for x, _ in base]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    # Newton divided differences
    coef = [y for _, y in base]
    m = len(coef)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial coefficients
    dense = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # dense = dense * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + dense[:-1]
        dense = [shifted[k] - xs[i] * dense[k] for k in range(m)]
        dense[0] += coef[i]
    poly = cls(dense)
    for x, y in pts[max_degree + 1 :]:
        if poly(x) != y:
            raise DegreeExceededError(
                f"data at x={x} disagrees with the degree-{max_degree} interpolant"
            )
    return poly


# --- rational functions in A (internal) -----------------------------------


def _dense_of(f: Laurent) -> tuple[list[Fraction], int]:
    """Write ``f = A^low * P(A)`` with ``P`` a dense polynomial, ``P(0) != 0``."""
    low = f.lower_degree()
    high = f.upper_degree()
    return [f.coefficient_at(k) for k in range(low, high + 1)], low


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, v in enumerate(b):
            a[i + k] -= f * v
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b and any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [v / lead for v in a]


class RationalFunction:
    """Quotient of two Laurent polynomials, kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Laurent = ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        pn, ln = _dense_of(num)
        pd, ld = _dense_of(den)
        g = _poly_gcd(pn, pd)
        if len(g) > 1:
            pn, rn = _poly_divmod(pn, g)
            pd, rd = _poly_divmod(pd, g)
            assert not any(rn) and not any(rd)
        lead = pd[-1]
        pn = [v / lead for v in pn]
        pd = [v / lead for v in pd]
        shift = ln - ld
        self.num = Laurent({i + shift: v for i, v in enumerate(pn)})
        self.den = Laurent({i: v for i, v in enumerate(pd)})

    @classmethod
    def of(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Laurent):
            return cls(x)
        return cls(Laurent.constant(x))

    def __add__(self, other):
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.of(other))

    def __mul__(self, other):
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = RationalFunction.of(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> Laurent:
        if not self.is_laurent():
            raise ValueError(f"not a Laurent polynomial: ({self.num}) / ({self.den})")
        return self.num

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"
