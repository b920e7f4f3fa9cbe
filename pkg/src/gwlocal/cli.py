"""Command-line front end.

    gwlocal invariants --geometry P3/O(-1,-3) --max-degree 5 --format csv
    gwlocal bps --geometry kp4 --max-degree 10 --moduli 5
    gwlocal verify [--only lemma72 --max 2]
    gwlocal reproduce [--geometry P3/O(-2,-2)]

Exit codes: 0 success, 1 failed check or table mismatch, 2 invalid geometry,
3 genus-zero request for an unsupported geometry.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath import format_rational
from .geometry import GeometryError, InvariantKind, SplitGeometry, parse_geometry
from .genus0 import (
    GENUS0_GEOMETRIES,
    UnsupportedGeometryError,
    gv_genus0,
    integrality_report,
    onepoint_gw,
    twopoint_gw,
)
from .genus1 import conjecture_invariants
from .reference import reproduce
from .verify import CHECK_GROUPS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_GEOMETRY, EXIT_UNSUPPORTED = 0, 1, 2, 3
DEFAULT_DEGREE = 20


@dataclass
class RunConfig:
    command: str
    geometry: SplitGeometry | None = None
    degree_max: int = DEFAULT_DEGREE
    output_format: str = "text"
    moduli: list = field(default_factory=list)
    seed: int = 0


@dataclass
class Table:
    geometry: str
    kind: str
    values: dict  # d -> Fraction
    divisible: dict = field(default_factory=dict)  # modulus -> {d: bool}

    def as_dict(self) -> dict:
        degrees = sorted(self.values)
        out = {
            "geometry": self.geometry,
            "kind": self.kind,
            "degrees": degrees,
            "values": [format_rational(self.values[d]) for d in degrees],
            "integral": [Fraction(self.values[d]).denominator == 1 for d in degrees],
        }
        if self.divisible:
            out["divisible"] = {str(m): [flags[d] for d in degrees] for m, flags in self.divisible.items()}
        return out


def render_tables(tables: Sequence[Table], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([t.as_dict() for t in tables], indent=2) + "\n"
    buf = io.StringIO()
    for t in tables:
        row = t.as_dict()
        mods = list(row.get("divisible", {}))
        if fmt == "csv":
            buf.write(f"# geometry={t.geometry} kind={t.kind}\n")
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["d", "value", "integral"] + [f"div{m}" for m in mods])
            for i, d in enumerate(row["degrees"]):
                extra = [str(row["divisible"][m][i]).lower() for m in mods]
                w.writerow([d, row["values"][i], str(row["integral"][i]).lower()] + extra)
        else:
            buf.write(f"{t.geometry}  {t.kind}\n")
            for i, d in enumerate(row["degrees"]):
                flags = "" if row["integral"][i] else "  (non-integer)"
                for m in mods:
                    flags += f"  {'' if row['divisible'][m][i] else 'not '}divisible by {m}"
                buf.write(f"{d:>4}  {row['values'][i]}{flags}\n")
            buf.write("\n")
    return buf.getvalue()


def _progress(degree_max: int) -> None:
    if degree_max > DEFAULT_DEGREE:
        print(f"note: computing through degree {degree_max}; large degrees take longer", file=sys.stderr)


def cmd_invariants(cfg: RunConfig, kinds: Sequence[str] | None = None) -> tuple[int, str]:
    geom = cfg.geometry
    if kinds is None:
        kinds = [InvariantKind.GENUS1_GW.value]
        if geom in GENUS0_GEOMETRIES:
            kinds += [InvariantKind.GENUS0_ONEPOINT_H3.value, InvariantKind.GENUS0_TWOPOINT_H2H2.value]
    _progress(cfg.degree_max)
    tables = []
    for kind in kinds:
        if kind == InvariantKind.GENUS1_GW.value:
            vals = conjecture_invariants(geom, cfg.degree_max).values
        elif kind == InvariantKind.GENUS0_ONEPOINT_H3.value:
            vals = onepoint_gw(geom, cfg.degree_max).values
        elif kind == InvariantKind.GENUS0_TWOPOINT_H2H2.value:
            vals = twopoint_gw(geom, cfg.degree_max).values
        else:
            raise ValueError(f"unknown kind {kind}")
        tables.append(Table(str(geom), kind, vals))
    return EXIT_OK, render_tables(tables, cfg.output_format)


def cmd_bps(cfg: RunConfig) -> tuple[int, str]:
    geom = cfg.geometry
    _progress(cfg.degree_max)
    tables = []
    for gw in (onepoint_gw(geom, cfg.degree_max), twopoint_gw(geom, cfg.degree_max)):
        bps = gv_genus0(gw)
        report = integrality_report(bps, cfg.moduli)
        div = {m: dict(zip(report.degrees, flags)) for m, flags in report.divisible.items()}
        tables.append(Table(str(geom), bps.insertion_kind.value, bps.values, div))
    return EXIT_OK, render_tables(tables, cfg.output_format)


def cmd_verify(cfg: RunConfig, only=None, max_param=None, n_max=10, seeds=3) -> tuple[int, str]:
    kwargs = {
        "only": only,
        "n_max": n_max,
        "seeds": tuple(range(cfg.seed, cfg.seed + seeds)),
        "localization_n_max": min(8, n_max),
    }
    if max_param is not None:
        kwargs["lemma72_max"] = max_param
        kwargs["binomial_max"] = max_param
    results = run_suite(**kwargs)
    failed = [r for r in results if not r.passed]
    if cfg.output_format == "json":
        payload = {
            "checks": len(results),
            "failed": len(failed),
            "results": [r.as_dict() for r in results],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [r.line() for r in results]
        lines.append(f"{len(results)} checks, {len(failed)} failed")
        text = "\n".join(lines) + "\n"
    return (EXIT_FAIL if failed else EXIT_OK), text


def cmd_reproduce(cfg: RunConfig, fixture_dir=None) -> tuple[int, str]:
    geoms = None if cfg.geometry is None else [cfg.geometry]
    if cfg.geometry is not None and cfg.geometry not in GENUS0_GEOMETRIES:
        raise UnsupportedGeometryError(f"no reference table for {cfg.geometry}")
    report = reproduce(geoms, fixture_dir)
    if cfg.output_format == "json":
        payload = {
            "cells_checked": report.cells_checked,
            "mismatches": [
                {
                    "geometry": str(m.geometry),
                    "kind": m.kind.value,
                    "degree": m.degree,
                    "expected": str(m.expected),
                    "computed": format_rational(m.computed),
                }
                for m in report.mismatches
            ],
            "reference_only": {
                g: {"column": "n1", "note": "reference-only (genus-one BPS recursion out of scope)",
                    "values": {str(d): str(v) for d, v in sorted(col.items())}}
                for g, col in report.reference_only.items()
            },
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = []
        for m in report.mismatches:
            lines.append(
                f"MISMATCH {m.geometry} {m.kind.value} d={m.degree}: "
                f"expected {m.expected}, computed {format_rational(m.computed)}"
            )
        for g, col in report.reference_only.items():
            vals = " ".join(str(col[d]) for d in sorted(col))
            lines.append(f"{g} n1 [reference-only (genus-one BPS recursion out of scope)]: {vals}")
        lines.append(f"{report.cells_checked} cells checked, {len(report.mismatches)} mismatches")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if report.ok else EXIT_FAIL), text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwlocal", description="Exact Gromov-Witten and BPS tables for local Calabi-Yau spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, geometry_required=True):
        p.add_argument("--geometry", required=geometry_required, help="P<l>/O(-c1,...) or a preset such as kp4")
        p.add_argument("--format", dest="output_format", choices=["text", "csv", "json"], default="text")

    p = sub.add_parser("invariants", help="genus-one (and genus-zero) invariants")
    common(p)
    p.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--kind", action="append", choices=[k.value for k in InvariantKind][:3])

    p = sub.add_parser("bps", help="genus-zero BPS numbers with integrality flags")
    common(p)
    p.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--moduli", type=int, nargs="*", default=[])

    p = sub.add_parser("verify", help="run the identity and localization checks")
    p.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    p.add_argument("--only", action="append", choices=list(CHECK_GROUPS))
    p.add_argument("--max", dest="max_param", type=int, help="upper bound for lemma72 d / binomial r")
    p.add_argument("--n-max", type=int, default=10, help="largest dimension in the geometry sweep")
    p.add_argument("--seeds", type=int, default=3, help="localization weight draws per geometry")
    p.add_argument("--seed", type=int, default=0, help="first localization seed")

    p = sub.add_parser("reproduce", help="recompute the bundled reference tables and diff them")
    common(p, geometry_required=False)
    p.add_argument("--fixture-dir", help="read reference CSVs from this directory instead")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        geom = parse_geometry(args.geometry) if getattr(args, "geometry", None) else None
        cfg = RunConfig(args.command, geom, output_format=args.output_format)
        if hasattr(args, "max_degree"):
            if args.max_degree < 1:
                raise SystemExit("--max-degree must be at least 1")
            cfg.degree_max = args.max_degree
        if args.command == "invariants":
            code, text = cmd_invariants(cfg, args.kind)
        elif args.command == "bps":
            cfg.moduli = list(args.moduli)
            code, text = cmd_bps(cfg)
        elif args.command == "verify":
            cfg.seed = args.seed
            code, text = cmd_verify(cfg, args.only, args.max_param, args.n_max, args.seeds)
        else:
            code, text = cmd_reproduce(cfg, args.fixture_dir)
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except UnsupportedGeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
