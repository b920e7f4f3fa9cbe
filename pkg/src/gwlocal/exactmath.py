"""Exact rational arithmetic and truncated formal power series.

Every coefficient is a :class:`fractions.Fraction`, which is always kept in
lowest terms with a positive denominator.  A truncated series of order ``D``
knows its coefficients of ``x**0 .. x**D``; anything beyond is *unknown*, not
zero, and asking for it raises :class:`TruncationError`.  Binary operations
produce a result whose order is the minimum of the operand orders.

Four containers live here:

``QSeries``
    univariate series with rational coefficients (used for ``q = e^t``, the
    flat coordinate ``Q`` and, in places, the auxiliary variable ``w``).
``TQSeries``
    a series in ``q`` whose coefficients are polynomials in ``t``, with
    ``d/dt`` acting through ``q = e^t``.
``BiSeries``
    a series in ``(x, q)`` truncated independently in both variables.
``LaurentSeries``
    a finite window of a Laurent expansion, used for residues.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

DEBUG_CHECKS = bool(os.environ.get("GWLOCAL_DEBUG"))

__all__ = [
    "Rational",
    "SeriesError",
    "TruncationError",
    "QSeries",
    "TQSeries",
    "BiSeries",
    "LaurentSeries",
    "series_arith",
    "series_log",
    "series_exp",
    "series_compose",
    "series_reversion",
    "series_d_dt",
    "laurent_residue",
    "laurent_at",
    "residue_at",
    "residue_at_infinity",
    "format_rational",
]


class SeriesError(ValueError):
    """Raised on an invalid series operation (bad constant term, etc.)."""


class TruncationError(SeriesError):
    """Raised when a coefficient beyond the known truncation is requested."""


def format_rational(x: Number) -> str:
    """Canonical ``p/q`` string, or a bare integer when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _common_denominator(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    # Integer convolution over a common denominator is much faster than
    # summing Fractions; each output coefficient is normalized on creation.
    ia, da = _common_denominator(a[: order + 1])
    ib, db = _common_denominator(b[: order + 1])
    nza = [(i, v) for i, v in enumerate(ia) if v]
    nzb = [(j, v) for j, v in enumerate(ib) if v]
    out = [0] * (order + 1)
    for i, x in nza:
        lim = order - i
        for j, y in nzb:
            if j > lim:
                break
            out[i + j] += x * y
    den = da * db
    return [Fraction(v, den) for v in out]


class QSeries:
    """Truncated power series ``c_0 + c_1 x + ... + c_D x^D`` (order ``D``)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number], order: int | None = None):
        c = [Fraction(v) for v in coeffs]
        if order is not None:
            if order < 0:
                raise SeriesError("truncation order must be non-negative")
            c = c[: order + 1] + [Fraction(0)] * (order + 1 - len(c))
        if not c:
            raise SeriesError("a series needs at least one coefficient")
        self._c = tuple(c)

    # -- construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, value: Number, order: int) -> "QSeries":
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], order) if order >= 0 else cls([0])

    @classmethod
    def monomial(cls, coeff: Number, power: int, order: int) -> "QSeries":
        c = [Fraction(0)] * (order + 1)
        if power <= order:
            c[power] = Fraction(coeff)
        return cls(c)

    @classmethod
    def variable(cls, order: int) -> "QSeries":
        return cls.monomial(1, 1, order)

    # -- access -------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, d: int) -> Fraction:
        if not isinstance(d, int):
            raise TypeError("series index must be an integer")
        if d < 0:
            return Fraction(0)
        if d > self.order:
            raise TruncationError(f"coefficient {d} requested from a series of order {self.order}")
        return self._c[d]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend a series of order {self.order} to {order}")
        return QSeries(self._c[: order + 1])

    def valuation(self) -> int | None:
        for i, v in enumerate(self._c):
            if v:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        terms = []
        for i, v in enumerate(self._c):
            if v:
                terms.append(f"{format_rational(v)}*x^{i}" if i else format_rational(v))
        body = " + ".join(terms) or "0"
        return f"QSeries({body} + O(x^{self.order + 1}))"

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other: object) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = min(self.order, o.order)
        return QSeries([self._c[i] + o._c[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries([-v for v in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([v * other for v in self._c])
        if not isinstance(other, QSeries):
            return NotImplemented
        return QSeries(_convolve(self._c, other._c, min(self.order, other.order)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return QSeries([v / other for v in self._c])
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.inverse(min(self.order, other.order))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int) or k < 0:
            raise SeriesError("only non-negative integer powers are supported")
        result = QSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self, order: int | None = None) -> "QSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        n = self.order if order is None else min(order, self.order)
        a0 = self._c[0]
        if a0 == 0:
            raise SeriesError("cannot invert a series with zero constant term")
        ints, den = _common_denominator(self._c[: n + 1])
        # b = 1/a with a = ints/den, so b = den * (1/ints); solve over Q with
        # integer left side to keep intermediate sums cheap.
        inv0 = Fraction(1, ints[0])
        out = [inv0]
        for k in range(1, n + 1):
            s = 0
            for i in range(1, k + 1):
                if ints[i]:
                    s += ints[i] * out[k - i]
            out.append(-s * inv0)
        return QSeries([v * den for v in out])

    # -- calculus -----------------------------------------------------------
    def derivative(self) -> "QSeries":
        """``d/dx``; the order drops by one."""
        if self.order == 0:
            raise TruncationError("derivative of an order-0 series is unknown")
        return QSeries([i * self._c[i] for i in range(1, self.order + 1)])

    def theta(self) -> "QSeries":
        """Euler operator ``x d/dx`` (this is ``d/dt`` when ``x = e^t``)."""
        return QSeries([i * v for i, v in enumerate(self._c)])

    def integral(self) -> "QSeries":
        """Antiderivative with zero constant term; the order grows by one."""
        return QSeries([Fraction(0)] + [v / (i + 1) for i, v in enumerate(self._c)])

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``x**k`` (k >= 0), keeping the order."""
        return QSeries([Fraction(0)] * k + list(self._c[: self.order + 1 - k]), self.order)

    def log(self) -> "QSeries":
        return series_log(self)

    def exp(self) -> "QSeries":
        return series_exp(self)

    def compose(self, inner: "QSeries") -> "QSeries":
        return series_compose(self, inner)

    def reversion(self) -> "QSeries":
        return series_reversion(self)

    def __call__(self, inner: "QSeries") -> "QSeries":
        return series_compose(self, inner)


def series_arith(a: QSeries, b: QSeries, kind: str) -> QSeries:
    """Dispatch ``add``, ``sub``, ``mul`` or ``div`` on two series."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise SeriesError(f"unknown arithmetic kind {kind!r}")


def series_log(s: QSeries) -> QSeries:
    """Formal logarithm of a series with constant term exactly 1."""
    if s[0] != 1:
        raise SeriesError(f"log needs constant term 1, got {s[0]}")
    if s.order == 0:
        return QSeries.zero(0)
    return (s.derivative() / s.truncate(s.order - 1)).integral()


def series_exp(s: QSeries) -> QSeries:
    """Formal exponential of a series with zero constant term."""
    if s[0] != 0:
        raise SeriesError(f"exp needs constant term 0, got {s[0]}")
    n = s.order
    ks = [k * s[k] for k in range(n + 1)]
    e = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if ks[k]:
                acc += ks[k] * e[m - k]
        e.append(acc / m)
    return QSeries(e)


def series_compose(outer: QSeries, inner: QSeries) -> QSeries:
    """``outer(inner(x))`` for ``inner`` with zero constant term (Horner)."""
    if inner[0] != 0:
        raise SeriesError("inner series of a composition must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    val = inner.valuation()
    if val is None:
        return QSeries.constant(outer[0], n)
    # terms outer_k inner^k with k*val > n cannot contribute
    top = min(outer.order, n // val)
    acc = QSeries.constant(outer[top], n)
    for k in range(top - 1, -1, -1):
        acc = acc * inner + outer[k]
    return acc


def series_reversion(s: QSeries, check: bool | None = None) -> QSeries:
    """Compositional inverse ``r`` with ``s(r(x)) = x`` via Lagrange inversion.

    ``[x^k] r = (1/k) [x^(k-1)] (x / s(x))^k``.
    """
    if s[0] != 0:
        raise SeriesError("reversion needs zero constant term")
    if s.order < 1 or s[1] == 0:
        raise SeriesError("reversion needs a nonzero linear coefficient")
    n = s.order
    out = [Fraction(0)] * (n + 1)
    if n >= 1:
        phi = QSeries(s.coeffs[1:]).inverse()  # x/s(x), order n-1
        power = QSeries.constant(1, n - 1)
        for k in range(1, n + 1):
            power = power * phi
            out[k] = power[k - 1] / k
    r = QSeries(out)
    if DEBUG_CHECKS if check is None else check:
        if series_compose(s, r) != QSeries.variable(n):
            raise SeriesError("reversion round-trip failed")
    return r


# ---------------------------------------------------------------------------
# series in q with t-polynomial coefficients
# ---------------------------------------------------------------------------


class TQSeries:
    """Series ``sum_d P_d(t) q^d`` stored as one :class:`QSeries` per power of ``t``.

    ``parts[a]`` is the q-series multiplying ``t**a``.  The t-degree is capped at
    ``t_cap`` (default ``order + 2``); exceeding it raises :class:`SeriesError`.
    """

    __slots__ = ("_parts", "_cap")

    def __init__(self, parts: Sequence[QSeries], t_cap: int | None = None):
        if not parts:
            raise SeriesError("a TQSeries needs at least the t^0 part")
        n = min(p.order for p in parts)
        parts = [p.truncate(n) for p in parts]
        while len(parts) > 1 and parts[-1].is_zero():
            parts.pop()
        cap = n + 2 if t_cap is None else t_cap
        if len(parts) - 1 > cap:
            raise SeriesError(f"t-degree {len(parts) - 1} exceeds the cap {cap}")
        self._parts = tuple(parts)
        self._cap = cap

    @classmethod
    def from_qseries(cls, s: QSeries, t_cap: int | None = None) -> "TQSeries":
        return cls([s], t_cap)

    @classmethod
    def t(cls, order: int, t_cap: int | None = None) -> "TQSeries":
        return cls([QSeries.zero(order), QSeries.constant(1, order)], t_cap)

    @property
    def order(self) -> int:
        return self._parts[0].order

    @property
    def t_degree(self) -> int:
        return len(self._parts) - 1

    @property
    def t_cap(self) -> int:
        return self._cap

    @property
    def parts(self) -> tuple[QSeries, ...]:
        return self._parts

    def coefficient(self, d: int, a: int) -> Fraction:
        """Coefficient of ``t**a q**d``."""
        if a > self.t_degree:
            self._parts[0][d]  # still validate the q index
            return Fraction(0)
        return self._parts[a][d]

    def t_poly(self, d: int) -> list[Fraction]:
        """Coefficients (in increasing t-power) of the polynomial at ``q**d``."""
        return [p[d] for p in self._parts]

    def is_t_free(self) -> bool:
        return self.t_degree == 0

    def to_qseries(self) -> QSeries:
        if not self.is_t_free():
            raise SeriesError("series still depends on t")
        return self._parts[0]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TQSeries):
            return self._parts == other._parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"TQSeries(order={self.order}, t_degree={self.t_degree})"

    def _binary(self, other: "TQSeries", sign: int) -> "TQSeries":
        k = max(len(self._parts), len(other._parts))
        n = min(self.order, other.order)
        zero = QSeries.zero(n)
        out = []
        for a in range(k):
            x = self._parts[a] if a < len(self._parts) else zero
            y = other._parts[a] if a < len(other._parts) else zero
            out.append(x + y if sign > 0 else x - y)
        return TQSeries(out, min(self._cap, other._cap))

    def __add__(self, other: "TQSeries") -> "TQSeries":
        return self._binary(other, 1)

    def __sub__(self, other: "TQSeries") -> "TQSeries":
        return self._binary(other, -1)

    def scale(self, s: QSeries | Number) -> "TQSeries":
        """Multiply by a t-free series or a scalar."""
        return TQSeries([p * s for p in self._parts], self._cap)

    def divide(self, s: QSeries) -> "TQSeries":
        """Divide by a t-free series with nonzero constant term."""
        inv = s.inverse()
        return TQSeries([p * inv for p in self._parts], self._cap)

    def d_dt(self) -> "TQSeries":
        return series_d_dt(self)


def series_d_dt(s: TQSeries) -> TQSeries:
    """``d/dt`` with ``dq/dt = q``: ``t^a q^d -> a t^(a-1) q^d + d t^a q^d``."""
    parts = s.parts
    out = []
    for a, p in enumerate(parts):
        term = p.theta()
        if a + 1 < len(parts):
            term = term + parts[a + 1] * (a + 1)
        out.append(term)
    return TQSeries(out, s.t_cap)


# ---------------------------------------------------------------------------
# bivariate series
# ---------------------------------------------------------------------------


class BiSeries:
    """Series ``sum_{k<=K} x^k S_k(q)`` truncated in ``x`` at ``K`` and in ``q``."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[QSeries]):
        if not rows:
            raise SeriesError("a BiSeries needs at least one x-power")
        n = min(r.order for r in rows)
        self._rows = tuple(r.truncate(n) for r in rows)

    @classmethod
    def from_qseries(cls, s: QSeries, x_order: int) -> "BiSeries":
        return cls([s] + [QSeries.zero(s.order)] * x_order)

    @property
    def x_order(self) -> int:
        return len(self._rows) - 1

    @property
    def q_order(self) -> int:
        return self._rows[0].order

    def __getitem__(self, k: int) -> QSeries:
        if k > self.x_order:
            raise TruncationError(f"x-power {k} beyond x-order {self.x_order}")
        return self._rows[k]

    def coefficient(self, k: int, d: int) -> Fraction:
        return self[k][d]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiSeries):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        k = min(self.x_order, other.x_order)
        return BiSeries([self._rows[i] + other._rows[i] for i in range(k + 1)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            return BiSeries([r * other for r in self._rows])
        k = min(self.x_order, other.x_order)
        rows = []
        for i in range(k + 1):
            acc = self._rows[0] * other._rows[i]
            for j in range(1, i + 1):
                acc = acc + self._rows[j] * other._rows[i - j]
            rows.append(acc)
        return BiSeries(rows)

    __rmul__ = __mul__


# ---------------------------------------------------------------------------
# Laurent series and residues
# ---------------------------------------------------------------------------


class LaurentSeries:
    """Window ``sum_{e=min_exponent}^{min_exponent+len-1} c_e u^e`` of a Laurent series."""

    __slots__ = ("min_exponent", "_c")

    def __init__(self, min_exponent: int, coeffs: Iterable[Number]):
        self.min_exponent = min_exponent
        self._c = tuple(Fraction(v) for v in coeffs)
        if not self._c:
            raise SeriesError("empty Laurent window")

    @property
    def max_exponent(self) -> int:
        return self.min_exponent + len(self._c) - 1

    def __getitem__(self, e: int) -> Fraction:
        if e < self.min_exponent:
            return Fraction(0)
        if e > self.max_exponent:
            raise TruncationError(f"exponent {e} beyond Laurent truncation {self.max_exponent}")
        return self._c[e - self.min_exponent]

    def residue(self) -> Fraction:
        return laurent_residue(self)

    def __repr__(self) -> str:
        return f"LaurentSeries(min_exponent={self.min_exponent}, terms={len(self._c)})"


def laurent_residue(f: LaurentSeries) -> Fraction:
    """Coefficient of ``u**-1``."""
    if f.max_exponent < -1:
        raise TruncationError("Laurent window stops before exponent -1")
    return f[-1]


def _taylor_shift(poly: Sequence[Fraction], a: Fraction) -> list[Fraction]:
    """Coefficients of ``P(a + u)`` in ``u``."""
    out = [Fraction(0)] * len(poly)
    for i, c in enumerate(poly):
        if not c:
            continue
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * a ** (i - j)
    return out


DenomFactors = Sequence[tuple[Number, int]]


def laurent_at(numer: Sequence[Number], denom_factors: DenomFactors, point: Number, terms: int) -> LaurentSeries:
    """Laurent expansion of ``P(w) / prod (w - root)^mult`` around ``w = point``.

    ``numer`` lists polynomial coefficients in increasing degree; the returned
    window starts at the pole order and holds ``terms`` coefficients.
    """
    a = Fraction(point)
    poly = [Fraction(c) for c in numer] or [Fraction(0)]
    order = max(terms - 1, 0)
    num = QSeries(_taylor_shift(poly, a), order)
    den = QSeries.constant(1, order)
    pole = 0
    for root, mult in denom_factors:
        if mult < 0:
            raise SeriesError("denominator multiplicities must be non-negative")
        shift = a - Fraction(root)
        if shift == 0:
            pole += mult
        else:
            den = den * QSeries([shift, 1], order) ** mult
    return LaurentSeries(-pole, (num / den).coeffs)


def residue_at(numer: Sequence[Number], denom_factors: DenomFactors, point: Number) -> Fraction:
    """Exact residue of ``P(w) / prod (w - root)^mult`` at a finite point."""
    pole = sum(m for r, m in denom_factors if Fraction(r) == Fraction(point))
    if pole == 0:
        return Fraction(0)
    return laurent_residue(laurent_at(numer, denom_factors, point, pole))


def residue_at_infinity(numer: Sequence[Number], denom_factors: DenomFactors) -> Fraction:
    """Residue at ``w = infinity``: ``-Res_{u=0} u^-2 f(1/u)``."""
    poly = [Fraction(c) for c in numer]
    while poly and poly[-1] == 0:
        poly.pop()
    if not poly:
        return Fraction(0)
    deg = len(poly) - 1
    total = sum(m for _, m in denom_factors)
    # u^-2 f(1/u) = u^(total - deg - 2) * rev(P)(u) / prod (1 - root u)^mult
    need = deg + 1 - total
    if need < 0:
        return Fraction(0)
    rev = QSeries(poly[::-1], need)
    den = QSeries.constant(1, need)
    for root, mult in denom_factors:
        den = den * QSeries([1, -Fraction(root)], need) ** mult
    return -(rev / den)[need]
