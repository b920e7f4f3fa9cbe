"""Target spaces ``Tot(O(-c_1) + ... + O(-c_m) -> P^l)`` with ``sum c_i = l + 1``."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterator

__all__ = [
    "GeometryError",
    "SplitGeometry",
    "InvariantKind",
    "make_geometry",
    "discriminant_constant",
    "parse_geometry",
    "PRESETS",
    "all_geometries",
]


class GeometryError(ValueError):
    """Invalid geometry descriptor or string."""


class InvariantKind(str, enum.Enum):
    GENUS1_GW = "genus1_gw"
    GENUS0_ONEPOINT_H3 = "genus0_onepoint_H3"
    GENUS0_TWOPOINT_H2H2 = "genus0_twopoint_H2H2"
    BPS0_ONEPOINT = "bps0_onepoint"
    BPS0_TWOPOINT = "bps0_twopoint"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class SplitGeometry:
    """Base ``P^base_dim`` with twists stored sorted ascending."""

    base_dim: int
    twists: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "twists", tuple(sorted(self.twists)))

    @property
    def l(self) -> int:  # noqa: E743
        return self.base_dim

    @property
    def rank(self) -> int:
        return len(self.twists)

    m = rank

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.twists)

    n = dim

    def __str__(self) -> str:
        return f"P{self.base_dim}/O(" + ",".join(f"-{c}" for c in self.twists) + ")"


def make_geometry(base_dim: int, twists) -> SplitGeometry:
    twists = tuple(int(c) for c in twists)
    if base_dim < 1:
        raise GeometryError(f"base dimension must be positive, got {base_dim}")
    if not twists:
        raise GeometryError("twist list is empty")
    if any(c < 1 for c in twists):
        raise GeometryError(f"twists must be positive integers, got {twists}")
    if sum(twists) != base_dim + 1:
        raise GeometryError(
            f"Calabi-Yau condition violated: sum of twists {sum(twists)} != base_dim + 1 = {base_dim + 1}"
        )
    return SplitGeometry(base_dim, twists)


def discriminant_constant(geom: SplitGeometry) -> Fraction:
    """``K = prod (-c_i)^c_i``, so that the discriminant is ``1 - K q``."""
    return Fraction(prod((-c) ** c for c in geom.twists))


_GRAMMAR = re.compile(r"^P(\d+)/O\(\s*(-\d+(?:\s*,\s*-\d+)*)\s*\)$", re.IGNORECASE)

PRESETS: dict[str, SplitGeometry] = {
    "kp2": SplitGeometry(2, (3,)),
    "kp4": SplitGeometry(4, (5,)),
    "o1x3_p3": SplitGeometry(3, (1, 3)),
    "o2x2_p3": SplitGeometry(3, (2, 2)),
    "o1cubed_p2": SplitGeometry(2, (1, 1, 1)),
}


def parse_geometry(text: str) -> SplitGeometry:
    """Parse ``P<l>/O(-c1,...,-cm)`` or a preset name (case-insensitive).

    Besides the fixed presets, ``kp<l>`` gives the canonical bundle of ``P^l``
    and ``o1_rep<l>`` gives ``O(-1)^(l+1) -> P^l``.
    """
    s = text.strip()
    key = s.lower()
    if key in PRESETS:
        return PRESETS[key]
    m = re.fullmatch(r"kp(\d+)", key)
    if m:
        l = int(m.group(1))
        return make_geometry(l, [l + 1])
    m = re.fullmatch(r"o1_rep(\d+)", key)
    if m:
        l = int(m.group(1))
        return make_geometry(l, [1] * (l + 1))
    m = _GRAMMAR.match(s)
    if not m:
        raise GeometryError(f"cannot parse geometry {text!r}; expected e.g. P3/O(-1,-3) or a preset")
    twists = [-int(x) for x in m.group(2).split(",")]
    return make_geometry(int(m.group(1)), twists)


def _partitions(total: int, parts: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= smallest:
            yield (total,)
        return
    for first in range(smallest, total // parts + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def all_geometries(max_dim: int, min_dim: int = 2) -> list[SplitGeometry]:
    """Every Calabi-Yau splitting geometry with ``min_dim <= n <= max_dim``."""
    out = []
    for n in range(min_dim, max_dim + 1):
        for m in range(1, n):
            l = n - m
            for tw in _partitions(l + 1, m):
                out.append(SplitGeometry(l, tw))
    return sorted(out, key=lambda g: (g.dim, g.rank, g.twists))
