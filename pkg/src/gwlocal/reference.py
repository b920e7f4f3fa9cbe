"""Bundled reference tables and the diff used by ``gwlocal reproduce``."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .geometry import InvariantKind, SplitGeometry, parse_geometry
from .genus0 import GENUS0_GEOMETRIES, bps_table

__all__ = ["ReferenceTable", "load_reference", "reference_tables", "CellMismatch", "ReproduceReport", "reproduce"]

FIXTURES = {
    SplitGeometry(4, (5,)): "kp4.csv",
    SplitGeometry(3, (1, 3)): "o1x3_p3.csv",
    SplitGeometry(3, (2, 2)): "o2x2_p3.csv",
}

# CSV column -> derived kind; n1 has no derivation here and is reference-only.
DERIVABLE_COLUMNS = {"n0_H3": InvariantKind.BPS0_ONEPOINT, "n0_H2H2": InvariantKind.BPS0_TWOPOINT}
REFERENCE_ONLY = "n1"


@dataclass(frozen=True)
class ReferenceTable:
    geometry: SplitGeometry
    columns: dict  # column name -> {d: int}

    @property
    def degrees(self) -> list[int]:
        return sorted(next(iter(self.columns.values())))


def _read(text: str) -> tuple[SplitGeometry | None, dict]:
    geom = None
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            if key.strip() == "geometry":
                geom = parse_geometry(val.strip())
            continue
        if line.strip():
            body.append(line)
    columns: dict[str, dict[int, int]] = {}
    for row in csv.DictReader(body):
        d = int(row.pop("d"))
        for name, value in row.items():
            columns.setdefault(name, {})[d] = int(value)
    return geom, columns


def load_reference(geom: SplitGeometry, fixture_dir: str | Path | None = None) -> ReferenceTable:
    if geom not in FIXTURES:
        raise KeyError(f"no reference table for {geom}")
    name = FIXTURES[geom]
    if fixture_dir is None:
        text = resources.files("gwlocal").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    else:
        text = Path(fixture_dir, name).read_text(encoding="utf-8")
    declared, columns = _read(text)
    if declared is not None and declared != geom:
        raise ValueError(f"fixture {name} declares geometry {declared}, expected {geom}")
    return ReferenceTable(geom, columns)


def reference_tables(fixture_dir: str | Path | None = None) -> list[ReferenceTable]:
    return [load_reference(g, fixture_dir) for g in GENUS0_GEOMETRIES]


@dataclass(frozen=True)
class CellMismatch:
    geometry: SplitGeometry
    kind: InvariantKind
    degree: int
    expected: int
    computed: Fraction


@dataclass(frozen=True)
class ReproduceReport:
    cells_checked: int
    mismatches: tuple[CellMismatch, ...]
    reference_only: dict  # geometry string -> {d: n1}

    @property
    def ok(self) -> bool:
        return not self.mismatches


def reproduce(geometries=None, fixture_dir: str | Path | None = None) -> ReproduceReport:
    """Recompute every derivable cell of the reference tables and diff them."""
    geometries = list(GENUS0_GEOMETRIES if geometries is None else geometries)
    checked = 0
    bad: list[CellMismatch] = []
    ref_only = {}
    for geom in geometries:
        ref = load_reference(geom, fixture_dir)
        top = max(ref.degrees)
        for column, kind in DERIVABLE_COLUMNS.items():
            computed = bps_table(geom, kind, top).values
            for d, expected in sorted(ref.columns[column].items()):
                checked += 1
                if computed[d] != expected:
                    bad.append(CellMismatch(geom, kind, d, expected, computed[d]))
        ref_only[str(geom)] = dict(ref.columns.get(REFERENCE_ONLY, {}))
    return ReproduceReport(checked, tuple(bad), ref_only)
