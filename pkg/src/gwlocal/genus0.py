"""Genus-zero one- and two-point invariants and their Gopakumar-Vafa numbers.

Only the three local 5-folds with explicit genus-zero recipes are supported:
``K_P4``, ``O(-1)+O(-3) -> P3`` and ``O(-2)+O(-2) -> P3``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exactmath import BiSeries, QSeries, series_compose
from .geometry import InvariantKind, SplitGeometry
from .genus1 import flat_coordinate_inverse
from .ifunctions import hypergeometric_biseries, local_factors, mirror_map

__all__ = [
    "UnsupportedGeometryError",
    "GENUS0_GEOMETRIES",
    "GwSeries",
    "BpsTable",
    "IntegralityReport",
    "onepoint_gw",
    "twopoint_gw",
    "gv_genus0",
    "gv_forward",
    "bps_table",
    "integrality_report",
]

KP4 = SplitGeometry(4, (5,))
O1O3 = SplitGeometry(3, (1, 3))
O2O2 = SplitGeometry(3, (2, 2))
GENUS0_GEOMETRIES = (KP4, O1O3, O2O2)

# Poincare pairing <H^2, H^3> on K_P4
KP4_PAIRING = Fraction(-1, 5)


class UnsupportedGeometryError(ValueError):
    """No genus-zero recipe is available for this geometry."""


@dataclass(frozen=True)
class GwSeries:
    geometry: SplitGeometry
    insertion_kind: InvariantKind
    values: dict = field(compare=True)
    variable: str = "flat_Q"

    @property
    def degree_max(self) -> int:
        return max(self.values, default=0)


@dataclass(frozen=True)
class BpsTable:
    geometry: SplitGeometry
    insertion_kind: InvariantKind
    values: dict

    @property
    def degree_max(self) -> int:
        return max(self.values, default=0)


def _check(geom: SplitGeometry) -> None:
    if geom not in GENUS0_GEOMETRIES:
        raise UnsupportedGeometryError(
            f"no genus-zero recipe for {geom}; supported: " + ", ".join(map(str, GENUS0_GEOMETRIES))
        )


def _values(series: QSeries, degree_max: int) -> dict[int, Fraction]:
    return {d: series[d] for d in range(1, degree_max + 1)}


def _kp4_flat(series: QSeries, degree_max: int, q_of_big_q: QSeries | None = None) -> QSeries:
    if q_of_big_q is None:
        q_of_big_q = flat_coordinate_inverse(mirror_map(KP4, degree_max))
    return series_compose(series, q_of_big_q)


def onepoint_gw(geom: SplitGeometry, degree_max: int, _inverse: QSeries | None = None) -> GwSeries:
    """``<H^3>_{0,1,d}`` for ``1 <= d <= degree_max``."""
    _check(geom)
    kind = InvariantKind.GENUS0_ONEPOINT_H3
    if geom == O1O3:
        vals = {d: Fraction(factorial(d - 1) * factorial(3 * d - 1), factorial(d) ** 4) for d in range(1, degree_max + 1)}
        return GwSeries(geom, kind, vals)
    if geom == O2O2:
        vals = {d: Fraction(factorial(2 * d - 1) ** 2, factorial(d) ** 4) for d in range(1, degree_max + 1)}
        return GwSeries(geom, kind, vals)
    # K_P4: -1/5 [x^2 Q^d] e^{-x f(q)} G(x, q)
    f = mirror_map(KP4, degree_max)
    hyper = hypergeometric_biseries(local_factors(KP4), 2, degree_max)
    twist = BiSeries([QSeries.constant(1, degree_max), -f, f * f / 2])
    x2 = (twist * hyper)[2]
    flat = _kp4_flat(x2, degree_max, _inverse)
    return GwSeries(geom, kind, _values(flat * KP4_PAIRING, degree_max))


def _ratio_formula(weight, upper: int, degree_max: int) -> QSeries:
    # [q^d] (sum_d w_d H(d) q^d) / (1 + sum_d w_d q^d), H(d) = sum_{r=d+1}^{upper*d} 1/r
    num = [Fraction(0)]
    den = [Fraction(1)]
    for d in range(1, degree_max + 1):
        w = weight(d)
        num.append(w * sum(Fraction(1, r) for r in range(d + 1, upper * d + 1)))
        den.append(Fraction(w))
    return QSeries(num) / QSeries(den)


def _kp4_twopoint_rule(d: int):
    return [(-5, -r) for r in range(1, 5 * d + 1)], [(1, s) for s in range(1, d + 1) for _ in range(5)]


def twopoint_gw(geom: SplitGeometry, degree_max: int, _inverse: QSeries | None = None) -> GwSeries:
    """``<H^2, H^2>_{0,2,d}`` for ``1 <= d <= degree_max``."""
    _check(geom)
    kind = InvariantKind.GENUS0_TWOPOINT_H2H2
    if geom == O1O3:
        s = _ratio_formula(lambda d: Fraction(factorial(3 * d), factorial(d) ** 3), 3, degree_max)
        return GwSeries(geom, kind, _values(s, degree_max))
    if geom == O2O2:
        s = _ratio_formula(lambda d: Fraction(factorial(2 * d) ** 2, factorial(d) ** 4), 2, degree_max)
        return GwSeries(geom, kind, _values(s, degree_max))
    f = mirror_map(KP4, degree_max)
    big_f = hypergeometric_biseries(_kp4_twopoint_rule, 2, degree_max)
    f0 = big_f[0]
    r1 = big_f[1] / f0
    r2 = big_f[2] / f0
    i1 = r1.theta() + 1
    inner = -f + (r1 + r2.theta()) / i1
    flat = _kp4_flat(inner, degree_max, _inverse)
    return GwSeries(geom, kind, _values(flat * KP4_PAIRING, degree_max))


def _insertions(kind: InvariantKind) -> int:
    if kind in (InvariantKind.GENUS0_ONEPOINT_H3, InvariantKind.BPS0_ONEPOINT):
        return 1
    if kind in (InvariantKind.GENUS0_TWOPOINT_H2H2, InvariantKind.BPS0_TWOPOINT):
        return 2
    raise ValueError(f"{kind} is not a genus-zero kind")


_BPS_KIND = {
    InvariantKind.GENUS0_ONEPOINT_H3: InvariantKind.BPS0_ONEPOINT,
    InvariantKind.GENUS0_TWOPOINT_H2H2: InvariantKind.BPS0_TWOPOINT,
}
_GW_KIND = {v: k for k, v in _BPS_KIND.items()}


def gv_genus0(gw: GwSeries, insertion_count: int | None = None) -> BpsTable:
    """Strip multiple covers: ``n_d = GW_d - sum_{e | d, e > 1} e^(k-3) n_{d/e}``."""
    k = _insertions(gw.insertion_kind) if insertion_count is None else insertion_count
    if k not in (1, 2):
        raise ValueError("insertion count must be 1 or 2")
    bps: dict[int, Fraction] = {}
    for d in sorted(gw.values):
        acc = Fraction(gw.values[d])
        for e in range(2, d + 1):
            if d % e == 0:
                acc -= Fraction(e) ** (k - 3) * bps[d // e]
        bps[d] = acc
    return BpsTable(gw.geometry, _BPS_KIND.get(gw.insertion_kind, gw.insertion_kind), bps)


def gv_forward(table: BpsTable, insertion_count: int | None = None) -> GwSeries:
    """Multiple-cover sum ``GW_D = sum_{e | D} e^(k-3) n_{D/e}``."""
    k = _insertions(table.insertion_kind) if insertion_count is None else insertion_count
    gw = {}
    for big_d in sorted(table.values):
        gw[big_d] = sum(
            (Fraction(e) ** (k - 3) * table.values[big_d // e] for e in range(1, big_d + 1) if big_d % e == 0),
            Fraction(0),
        )
    return GwSeries(table.geometry, _GW_KIND.get(table.insertion_kind, table.insertion_kind), gw)


def bps_table(geom: SplitGeometry, kind: InvariantKind | str, degree_max: int) -> BpsTable:
    """Convenience: GW series of the matching insertion, then GV inversion."""
    kind = InvariantKind(kind)
    if kind in (InvariantKind.BPS0_ONEPOINT, InvariantKind.GENUS0_ONEPOINT_H3):
        return gv_genus0(onepoint_gw(geom, degree_max))
    if kind in (InvariantKind.BPS0_TWOPOINT, InvariantKind.GENUS0_TWOPOINT_H2H2):
        return gv_genus0(twopoint_gw(geom, degree_max))
    raise ValueError(f"{kind} is not a genus-zero kind")


@dataclass(frozen=True)
class IntegralityReport:
    geometry: object
    insertion_kind: object
    moduli: tuple[int, ...]
    degrees: tuple[int, ...]
    is_integer: tuple[bool, ...]
    divisible: dict  # modulus -> tuple of bools per degree (False for non-integers)

    @property
    def non_integer_degrees(self) -> list[int]:
        return [d for d, ok in zip(self.degrees, self.is_integer) if not ok]

    @property
    def all_integer(self) -> bool:
        return all(self.is_integer)

    def summary(self) -> dict:
        return {
            "degrees": len(self.degrees),
            "integers": sum(self.is_integer),
            "non_integer_degrees": self.non_integer_degrees,
            "divisible": {m: sum(flags) for m, flags in self.divisible.items()},
        }


def integrality_report(table: BpsTable, moduli: Sequence[int] = ()) -> IntegralityReport:
    degrees = tuple(sorted(table.values))
    vals = [Fraction(table.values[d]) for d in degrees]
    is_int = tuple(v.denominator == 1 for v in vals)
    div = {
        m: tuple(ok and v.numerator % m == 0 for v, ok in zip(vals, is_int)) for m in moduli
    }
    return IntegralityReport(table.geometry, table.insertion_kind, tuple(moduli), degrees, is_int, div)
