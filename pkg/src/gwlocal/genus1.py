"""Genus-one Gromov-Witten generating functions.

The conjectural local formula is assembled in the algebraic coordinate
``q = e^t`` from the discriminant ``1 - K q`` (``K = prod (-c_i)^c_i``), the
ladder diagonal ``I_{p,p}`` and, when there is a single twist, the mirror map
``f = T - t``.  For ``m = 1`` the series is then re-expanded in the flat
coordinate ``Q = q e^{f(q)}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .exactmath import QSeries, TQSeries, series_compose, series_exp, series_log, series_reversion
from .geometry import GeometryError, SplitGeometry, discriminant_constant, make_geometry
from .ifunctions import (
    build_ladder,
    hypergeometric_biseries,
    i_function_row,
    ladder_depth,
    mirror_map,
    row_from_hypergeometric,
)

__all__ = [
    "GenusOneSeries",
    "conjecture_coefficients",
    "conjecture_in_t",
    "conjecture_invariants",
    "flat_coordinate_inverse",
    "to_flat",
    "degree_one_closed",
    "extremal_closed",
    "extremal_geometry",
    "zinger_hypersurface",
    "hypersurface_degree_one_closed",
]


@dataclass(frozen=True)
class GenusOneSeries:
    geometry: object
    variable: str  # "flat_Q" or "algebraic_q"
    series: QSeries

    def __post_init__(self) -> None:
        if self.series[0] != 0:
            raise ValueError("genus-one generating function must have zero constant term")

    @property
    def degree_max(self) -> int:
        return self.series.order

    @property
    def values(self) -> dict[int, Fraction]:
        return {d: self.series[d] for d in range(1, self.series.order + 1)}

    def __getitem__(self, d: int) -> Fraction:
        if d < 1:
            raise KeyError(d)
        return self.series[d]


def conjecture_coefficients(n: int) -> tuple[Fraction, dict[int, Fraction]]:
    """Coefficients of ``ln(1 - K q)`` and of each ``ln I_{p,p}`` (both enter with a minus sign)."""
    depth = ladder_depth(n)
    if n % 2:
        disc = Fraction(n + 1, 48)
        ladder = {p: Fraction((n + 1 - 2 * p) ** 2, 8) for p in range(1, depth + 1)}
    else:
        disc = Fraction(n - 2, 48)
        ladder = {p: Fraction((n + 2 - 2 * p) * (n - 2 * p), 8) for p in range(1, depth + 1)}
    return disc, ladder


def conjecture_in_t(geom: SplitGeometry, q_order: int) -> QSeries:
    """Right-hand side of the conjectural formula as a series in ``q = e^t``."""
    n = geom.dim
    disc, ladder_coeffs = conjecture_coefficients(n)
    depth = ladder_depth(n)
    row = i_function_row(geom, depth + 1, q_order)
    ladder = build_ladder(row.entries, depth, geom)
    k = discriminant_constant(geom)
    total = series_log(QSeries([1, -k], q_order)) * (-disc)
    for p, c in ladder_coeffs.items():
        total = total - series_log(ladder.diagonal[p]) * c
    if geom.rank == 1:
        total = total + mirror_map(geom, q_order) * Fraction((n - 2) * (n + 1), 48)
    return total


def flat_coordinate_inverse(f: QSeries) -> QSeries:
    """``q(Q)``: the reversion of ``Q = q exp(f(q))``."""
    big_q = series_exp(f).shift(1)
    return series_reversion(big_q)


def to_flat(series_in_q: QSeries, f: QSeries) -> QSeries:
    """Re-expand a series in ``q`` in the flat variable ``Q = q e^{f(q)}``."""
    if f.is_zero():
        return series_in_q
    return series_compose(series_in_q, flat_coordinate_inverse(f))


def conjecture_invariants(geom: SplitGeometry, degree_max: int) -> GenusOneSeries:
    """Conjectural ``N_{1,d}`` for ``1 <= d <= degree_max`` in the flat coordinate."""
    in_t = conjecture_in_t(geom, degree_max)
    if geom.rank == 1:
        in_t = to_flat(in_t, mirror_map(geom, degree_max))
    return GenusOneSeries(geom, "flat_Q", in_t)


def degree_one_closed(geom: SplitGeometry) -> Fraction:
    """Degree-one invariant from the localization closed forms."""
    n, m = geom.dim, geom.rank
    if m == 1:
        return Fraction((-1) ** n * (factorial(n) - n ** (n - 1)) * (n - 2) * (n + 1), 48)
    cs = geom.twists
    bracket = sum(Fraction(1, c) for c in cs) - Fraction(n - 2 * m + 1, 2)
    return Fraction((-1) ** (n - m + 1), 24) * bracket * prod(c**c for c in cs)


def extremal_geometry(family: str, l: int) -> SplitGeometry:
    if family == "all_ones":
        if l < 1:
            raise GeometryError("all_ones family needs l >= 1")
        return make_geometry(l, [1] * (l + 1))
    if family == "ones_and_two":
        if l < 2:
            raise GeometryError("ones_and_two family needs l >= 2")
        return make_geometry(l, [1] * (l - 1) + [2])
    raise ValueError(f"unknown extremal family {family!r}")


def extremal_closed(family: str, l: int, d: int) -> Fraction:
    """``N_{1,d}`` of ``O(-1)^(l+1) -> P^l`` or ``O(-1)^(l-1)+O(-2) -> P^l``."""
    extremal_geometry(family, l)
    if d < 1:
        raise ValueError("degree must be positive")
    sign = (-1) ** ((l - 1) * d)
    if family == "all_ones":
        return Fraction(sign * (l + 1), 24 * d)
    return Fraction(sign * (l - 1) * 4**d, 24 * d)


def _hypersurface_rule(n: int):
    def rule(d: int):
        return [(n, r) for r in range(1, n * d + 1)], [(1, s) for s in range(1, d + 1) for _ in range(n)]

    return rule


def zinger_hypersurface(n: int, degree_max: int) -> GenusOneSeries:
    """Genus-one invariants of the degree-``n`` Calabi-Yau hypersurface in ``P^(n-1)``."""
    if n < 3:
        raise ValueError("hypersurface formula needs n >= 3")
    depth = (n - 3) // 2 if n % 2 else (n - 4) // 2
    w_order = max(depth, 1)
    hyper = hypergeometric_biseries(_hypersurface_rule(n), w_order, degree_max)
    entries = row_from_hypergeometric(hyper, max(degree_max, w_order) + 2)
    ladder = build_ladder(entries, depth, f"degree-{n} hypersurface")
    i00 = ladder.diagonal[0]
    big_t = entries[1].divide(i00)
    f = (big_t - TQSeries.t(degree_max, big_t.t_cap)).to_qseries()

    a = Fraction((n - 2) * (n + 1), 48) + Fraction(1 - (1 - n) ** n, 24 * n * n)
    b = Fraction(n * n - 1 + (1 - n) ** n, 24 * n)
    if n % 2:
        disc = Fraction(n - 1, 48)
        coeffs = {p: Fraction((n - 1 - 2 * p) ** 2, 8) for p in range(depth + 1)}
    else:
        disc = Fraction(n - 4, 48)
        coeffs = {p: Fraction((n - 2 * p) * (n - 2 - 2 * p), 8) for p in range(depth + 1)}
    total = f * a + series_log(i00) * b - series_log(QSeries([1, -(n**n)], degree_max)) * disc
    for p, c in coeffs.items():
        total = total - series_log(ladder.diagonal[p]) * c
    return GenusOneSeries(f"degree-{n} hypersurface", "flat_Q", to_flat(total, f))


def hypersurface_degree_one_closed(n: int) -> Fraction:
    """Closed form of the degree-one genus-one invariant of the hypersurface."""
    if n < 3:
        raise ValueError("hypersurface formula needs n >= 3")
    harmonic = sum(Fraction(n, s) for s in range(2, n + 1))
    inner = (Fraction((n - 2) * (n + 1), 48) + Fraction(1 - (1 - n) ** n, 24 * n * n)) * harmonic
    inner += Fraction(n * n - 1 + (1 - n) ** n, 24 * n)
    return factorial(n) * inner - Fraction(n ** (n - 1) * (n - 1) * (n + 2), 48)
