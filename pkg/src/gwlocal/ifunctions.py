"""Hypergeometric I-function rows, the ``I_{p,q}`` ladder and the mirror map.

For a geometry with base ``P^l`` and twists ``c_i`` the row is

    sum_q I_{0,q}(t) w^q = e^{wt} sum_d q^d prod_i prod_{s=0}^{c_i d - 1} (-c_i w - s)
                                           / prod_{s=1}^{d} (w + s)^{l+1}

and the ladder is ``I_{p,q} = d/dt (I_{p-1,q} / I_{p-1,p-1})``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .exactmath import BiSeries, QSeries, SeriesError, TQSeries
from .geometry import SplitGeometry

__all__ = [
    "LadderError",
    "IFunctionRow",
    "IppLadder",
    "hypergeometric_biseries",
    "local_factors",
    "i_function_row",
    "row_from_hypergeometric",
    "build_ladder",
    "ipp_ladder",
    "mirror_map",
    "a_coefficients",
    "first_order_prediction",
    "ladder_depth",
]

# A linear factor (a, b) stands for a*w + b.
Linear = tuple[int, int]
FactorRule = Callable[[int], tuple[Sequence[Linear], Sequence[Linear]]]


class LadderError(SeriesError):
    """The ladder produced a diagonal entry that is not a unit pure q-series."""


def _poly_of_factors(factors: Sequence[Linear], order: int) -> list[int]:
    poly = [1] + [0] * order
    for a, b in factors:
        for k in range(order, 0, -1):
            poly[k] = poly[k] * b + poly[k - 1] * a
        poly[0] *= b
    return poly


def hypergeometric_biseries(rule: FactorRule, w_order: int, q_order: int) -> BiSeries:
    """``sum_d q^d N_d(w)/D_d(w)`` expanded exactly to ``w^w_order`` and ``q^q_order``.

    ``rule(d)`` returns the linear numerator and denominator factors of the
    degree-``d`` summand.
    """
    rows = [[Fraction(0)] * (q_order + 1) for _ in range(w_order + 1)]
    for d in range(q_order + 1):
        numer, denom = rule(d)
        num = QSeries(_poly_of_factors(numer, w_order))
        den = QSeries(_poly_of_factors(denom, w_order))
        summand = num / den
        for k in range(w_order + 1):
            rows[k][d] = summand[k]
    return BiSeries([QSeries(r) for r in rows])


def local_factors(geom: SplitGeometry) -> FactorRule:
    big_n = geom.base_dim + 1

    def rule(d: int):
        numer = [(-c, -s) for c in geom.twists for s in range(c * d)]
        denom = [(1, s) for s in range(1, d + 1) for _ in range(big_n)]
        return numer, denom

    return rule


def row_from_hypergeometric(hyper: BiSeries, t_cap: int | None = None) -> list[TQSeries]:
    """Multiply by ``e^{wt}``: ``I_{0,q} = sum_j t^j/j! H_{q-j}``."""
    out = []
    for q in range(hyper.x_order + 1):
        parts = [hyper[q - j] * Fraction(1, factorial(j)) for j in range(q + 1)]
        out.append(TQSeries(parts, t_cap))
    return out


@dataclass(frozen=True)
class IFunctionRow:
    geometry: object
    w_order: int
    entries: tuple[TQSeries, ...]
    hypergeometric: BiSeries = field(repr=False)

    @property
    def q_order(self) -> int:
        return self.entries[0].order


def i_function_row(geom: SplitGeometry, w_order: int, q_order: int) -> IFunctionRow:
    if w_order < 0 or q_order < 0:
        raise ValueError("orders must be non-negative")
    hyper = hypergeometric_biseries(local_factors(geom), w_order, q_order)
    entries = row_from_hypergeometric(hyper, max(q_order, w_order) + 2)
    return IFunctionRow(geom, w_order, tuple(entries), hyper)


@dataclass(frozen=True)
class IppLadder:
    geometry: object
    p_max: int
    diagonal: tuple[QSeries, ...]
    intermediates: dict = field(repr=False)

    def __getitem__(self, pq: tuple[int, int]) -> TQSeries:
        return self.intermediates[pq]


def build_ladder(entries: Sequence[TQSeries], p_max: int, geometry: object = None) -> IppLadder:
    """Run ``I_{p,q} = d/dt(I_{p-1,q}/I_{p-1,p-1})`` up to ``I_{p_max,p_max}``."""
    if p_max > len(entries) - 1:
        raise ValueError(f"ladder depth {p_max} needs I_(0,q) for q <= {p_max}; row has {len(entries) - 1}")
    table: dict[tuple[int, int], TQSeries] = {(0, q): entries[q] for q in range(p_max + 1)}
    diagonal: list[QSeries] = []
    for p in range(p_max + 1):
        if p > 0:
            div = diagonal[p - 1]
            for q in range(p, p_max + 1):
                table[p, q] = table[p - 1, q].divide(div).d_dt()
        entry = table[p, p]
        if not entry.is_t_free():
            raise LadderError(f"I_({p},{p}) still depends on t (t-degree {entry.t_degree}) for {geometry}")
        diag = entry.to_qseries()
        if diag[0] != 1:
            raise LadderError(f"I_({p},{p}) has constant term {diag[0]}, expected 1")
        diagonal.append(diag)
    return IppLadder(geometry, p_max, tuple(diagonal), table)


def ladder_depth(n: int) -> int:
    """Largest ``p`` whose ``ln I_{p,p}`` enters the genus-one formula in dimension ``n``."""
    return (n - 1) // 2 if n % 2 else (n - 2) // 2


def ipp_ladder(geom: SplitGeometry, p_max: int, q_order: int, row: IFunctionRow | None = None) -> IppLadder:
    if row is None:
        row = i_function_row(geom, p_max, q_order)
    elif row.w_order < p_max:
        raise ValueError("row w_order is smaller than the requested ladder depth")
    return build_ladder(row.entries, p_max, geom)


def mirror_map(geom: SplitGeometry, q_order: int) -> QSeries:
    """``f(q) = T - t`` where ``T = I_{0,1}/I_{0,0}``."""
    row = i_function_row(geom, 1, q_order)
    big_t = row.entries[1].divide(row.entries[0].to_qseries())
    f = big_t - TQSeries.t(q_order, big_t.t_cap)
    return f.to_qseries()


def a_coefficients(geom: SplitGeometry, k_max: int) -> list[Fraction]:
    """``[a_1, ..., a_k_max]`` from ``(-1)^(l+1) prod_i prod_{s<c_i}(c_i w + s)/(w+1)^(l+1)``."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    big_n = geom.base_dim + 1
    numer = [(c, s) for c in geom.twists for s in range(c)]
    num = QSeries(_poly_of_factors(numer, k_max)) * (-1) ** big_n
    den = QSeries(_poly_of_factors([(1, 1)] * big_n, k_max))
    expansion = num / den
    if expansion[0] != 0:
        raise SeriesError("a-expansion has a constant term")
    return [expansion[k] for k in range(1, k_max + 1)]


def first_order_prediction(a: Sequence[Fraction], p: int) -> Fraction:
    """``[q^1] I_{p,p} = sum_{k=1}^{p} a_k binom(p-1, k-1)``."""
    return sum((a[k - 1] * comb(p - 1, k - 1) for k in range(1, p + 1)), Fraction(0))
