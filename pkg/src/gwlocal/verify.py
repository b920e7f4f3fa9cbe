"""Mechanical checks of the residue lemma, the first-order ladder identity,
the binomial sums, the Catalan-type identity behind the ``O(-2)`` family, and
an equivariant localization oracle for degree-one invariants.

Each check returns :class:`CheckResult` objects whose ``passed`` flag is exact
equality of two independently computed rationals.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import comb, factorial, prod
from typing import Callable, Iterable, Sequence

from .exactmath import format_rational, residue_at, residue_at_infinity, series_log
from .geometry import SplitGeometry, all_geometries
from .genus1 import conjecture_coefficients, conjecture_invariants, degree_one_closed
from .ifunctions import a_coefficients, first_order_prediction, ipp_ladder, ladder_depth

__all__ = [
    "CheckResult",
    "WeightVector",
    "DegenerateWeights",
    "lemma_integrand",
    "check_residue_lemma",
    "check_residue_symmetry",
    "check_prop66",
    "check_first_order_ladder",
    "check_binomial_identities",
    "check_lemma72",
    "draw_weights",
    "localization_sum",
    "check_degree_one_localization",
    "check_degree_one_consistency",
    "CHECK_GROUPS",
    "run_suite",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    parameters: str
    lhs: Fraction
    rhs: Fraction
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "passed": self.passed,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "detail": self.detail,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}[{self.parameters}] lhs={format_rational(self.lhs)} rhs={format_rational(self.rhs)}"
        return text + (f" ({self.detail})" if self.detail else "")


# ---------------------------------------------------------------------------
# residue lemma
# ---------------------------------------------------------------------------


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def lemma_integrand(geom: SplitGeometry) -> tuple[list[int], list[tuple[int, int]]]:
    """Numerator coefficients and ``[(root, mult)]`` of the lemma's rational function.

    Odd ``n = 2r+1``: ``(2w+1) prod_i prod_{s=1}^{c_i-1}(c_i w + s) / ((w+1) w)^(r-m+1)``;
    even ``n = 2r``: no ``(2w+1)`` and exponent ``r - m``.
    """
    n, m = geom.dim, geom.rank
    numer = [1]
    for c in geom.twists:
        for s in range(1, c):
            numer = _poly_mul(numer, [s, c])
    if n % 2:
        numer = _poly_mul(numer, [1, 2])
        e = (n - 1) // 2 - m + 1
    else:
        e = n // 2 - m
    return numer, [(0, e), (-1, e)]


def _lemma_rhs(geom: SplitGeometry) -> Fraction:
    cs = geom.twists
    bracket = sum(Fraction(1, c) for c in cs) - sum(cs)
    p = prod(c ** (c - 1) for c in cs)
    if geom.dim % 2:
        return -Fraction(1, 12) * bracket * p
    return -Fraction(1, 24) * (bracket + Fraction(3, 2)) * p


def check_residue_lemma(geom: SplitGeometry) -> CheckResult:
    numer, factors = lemma_integrand(geom)
    lhs = residue_at(numer, factors, 0)
    return CheckResult("residue_lemma", str(geom), lhs, _lemma_rhs(geom), "odd n" if geom.dim % 2 else "even n")


def check_residue_symmetry(geom: SplitGeometry) -> list[CheckResult]:
    """Residue at 0 equals residue at -1, and the three residues sum to zero."""
    numer, factors = lemma_integrand(geom)
    r0 = residue_at(numer, factors, 0)
    r1 = residue_at(numer, factors, -1)
    rinf = residue_at_infinity(numer, factors)
    return [
        CheckResult("residue_symmetry", str(geom), r0, r1, "Res_0 vs Res_-1"),
        CheckResult("residue_theorem", str(geom), r0 + r1 + rinf, Fraction(0), "Res_0 + Res_-1 + Res_inf"),
    ]


# ---------------------------------------------------------------------------
# first-order ladder identities
# ---------------------------------------------------------------------------


def _prop66_rhs(geom: SplitGeometry) -> Fraction:
    cs = geom.twists
    bracket = sum(Fraction(1, c) for c in cs) - sum(cs)
    if geom.dim % 2 == 0:
        bracket += Fraction(3, 2)
    return -Fraction((-1) ** sum(cs), 24) * bracket * prod(c**c for c in cs)


def check_prop66(geom: SplitGeometry) -> CheckResult:
    n = geom.dim
    _, coeffs = conjecture_coefficients(n)
    ladder = ipp_ladder(geom, ladder_depth(n), 1)
    lhs = sum((c * series_log(ladder.diagonal[p])[1] for p, c in coeffs.items()), Fraction(0))
    return CheckResult("prop66", str(geom), lhs, _prop66_rhs(geom))


def check_first_order_ladder(geom: SplitGeometry, p_max: int | None = None) -> list[CheckResult]:
    """``[q^1] I_{p,p}`` from the ladder against the binomial sum of the ``a_k``."""
    p_max = max(ladder_depth(geom.dim), 1) if p_max is None else p_max
    ladder = ipp_ladder(geom, p_max, 1)
    a = a_coefficients(geom, p_max)
    return [
        CheckResult("first_order_ladder", f"{geom};p={p}", ladder.diagonal[p][1], first_order_prediction(a, p))
        for p in range(1, p_max + 1)
    ]


def check_binomial_identities(r_max: int) -> list[CheckResult]:
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    out = []
    for r in range(1, r_max + 1):
        for k in range(1, r + 1):
            lhs = sum((r + 1 - p) ** 2 * comb(p - 1, k - 1) for p in range(1, r + 1))
            rhs = 2 * comb(r + 2, k + 2) - comb(r + 1, k + 1)
            out.append(CheckResult("binomial_odd", f"r={r};k={k}", Fraction(lhs), Fraction(rhs)))
            lhs = sum((r + 1 - p) * (r - p) * comb(p - 1, k - 1) for p in range(1, r))
            rhs = 2 * comb(r + 1, k + 2)
            out.append(CheckResult("binomial_even", f"r={r};k={k}", Fraction(lhs), Fraction(rhs)))
    return out


def _central(d: int) -> int:
    return factorial(2 * d) // factorial(d) ** 2


def check_lemma72(d_max: int) -> list[CheckResult]:
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    out = []
    for d in range(1, d_max + 1):
        harmonic = sum(Fraction(1, d + a) for a in range(1, d + 1))
        lhs = _central(d) * (2 * d * harmonic + 1)
        lhs -= sum(Fraction(d0 * _central(d0) * _central(d - d0), d - d0) for d0 in range(1, d))
        out.append(CheckResult("lemma72", f"d={d}", lhs, Fraction(4**d)))
    return out


# ---------------------------------------------------------------------------
# degree-one localization oracle
# ---------------------------------------------------------------------------


class DegenerateWeights(ValueError):
    """A weight draw makes some localization denominator vanish."""


@dataclass(frozen=True)
class WeightVector:
    alphas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(set(self.alphas)) != len(self.alphas):
            raise DegenerateWeights("weights must be pairwise distinct")
        if any(a == 0 for a in self.alphas):
            raise DegenerateWeights("weights must be nonzero")


def draw_weights(count: int, seed: int, retries: int = 16) -> WeightVector:
    """Distinct nonzero integer weights in ``1..997`` from a seeded generator."""
    rng = random.Random(seed)
    for _ in range(retries):
        try:
            return WeightVector(tuple(Fraction(rng.randint(1, 997)) for _ in range(count)))
        except DegenerateWeights:
            continue
    raise DegenerateWeights(f"no valid weight draw after {retries} attempts (seed {seed})")


def _contribution_m1(al: Sequence[Fraction], i: int, j: int, n: int) -> Fraction:
    ai, aj = al[i], al[j]
    num = ai * prod(((n - a) * aj + a * ai for a in range(1, n)), start=Fraction(1))
    den = prod((aj - al[k] for k in range(len(al)) if k != j), start=Fraction(1))
    tail = sum((1 / (ai - al[k]) for k in range(len(al)) if k not in (i, j)), Fraction(0)) - 1 / (n * ai)
    return Fraction((-1) ** n * n, 24) * num / den * tail


def _contribution_split(al: Sequence[Fraction], i: int, j: int, geom: SplitGeometry) -> Fraction:
    n, m = geom.dim, geom.rank
    ai, aj = al[i], al[j]
    num = ai**m
    for c in geom.twists:
        num *= c * prod(((c - a) * aj + a * ai for a in range(1, c)), start=Fraction(1))
    den = (aj - ai) * prod((aj - al[k] for k in range(len(al)) if k not in (i, j)), start=Fraction(1))
    tail = sum((1 / (ai - al[k]) for k in range(len(al)) if k not in (i, j)), Fraction(0))
    tail -= sum((1 / (c * ai) for c in geom.twists), Fraction(0))
    return Fraction((-1) ** (n - m + 1), 24) * num / den * tail


def localization_sum(geom: SplitGeometry, weights: WeightVector) -> Fraction:
    """Sum of the fixed-graph contributions over ordered pairs ``i != j``."""
    al = weights.alphas
    if len(al) != geom.base_dim + 1:
        raise ValueError(f"need {geom.base_dim + 1} weights, got {len(al)}")
    total = Fraction(0)
    for i in range(len(al)):
        for j in range(len(al)):
            if i == j:
                continue
            if geom.rank == 1:
                total += _contribution_m1(al, i, j, geom.dim)
            else:
                total += _contribution_split(al, i, j, geom)
    return total


def check_degree_one_localization(geom: SplitGeometry, seed: int) -> CheckResult:
    w = draw_weights(geom.base_dim + 1, seed)
    lhs = localization_sum(geom, w)
    weights = ",".join(str(a) for a in w.alphas)
    return CheckResult("localization", f"{geom};seed={seed}", lhs, degree_one_closed(geom), f"alpha=({weights})")


def check_degree_one_consistency(geom: SplitGeometry) -> CheckResult:
    lhs = conjecture_invariants(geom, 1)[1]
    return CheckResult("degree_one_consistency", str(geom), lhs, degree_one_closed(geom))


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def _as_list(x) -> list[CheckResult]:
    return x if isinstance(x, list) else [x]


def _call(job: Callable) -> list[CheckResult]:
    return _as_list(job())


CHECK_GROUPS = ("residue", "prop66", "binomial", "lemma72", "localization", "degree_one")


def _jobs(
    only: Iterable[str] | None,
    n_max: int,
    lemma72_max: int,
    binomial_max: int,
    seeds: Sequence[int],
    localization_n_max: int,
) -> list[Callable]:
    groups = set(CHECK_GROUPS if only is None else only)
    unknown = groups - set(CHECK_GROUPS)
    if unknown:
        raise ValueError(f"unknown check group(s): {sorted(unknown)}")
    geoms = all_geometries(n_max)
    jobs: list[Callable] = []
    if "residue" in groups:
        jobs += [partial(check_residue_lemma, g) for g in geoms]
        jobs += [partial(check_residue_symmetry, g) for g in geoms]
    if "prop66" in groups:
        jobs += [partial(check_prop66, g) for g in geoms]
        jobs += [partial(check_first_order_ladder, g) for g in geoms]
    if "binomial" in groups:
        jobs.append(partial(check_binomial_identities, binomial_max))
    if "lemma72" in groups:
        jobs.append(partial(check_lemma72, lemma72_max))
    if "localization" in groups:
        for g in all_geometries(localization_n_max):
            jobs += [partial(check_degree_one_localization, g, s) for s in seeds]
    if "degree_one" in groups:
        jobs += [partial(check_degree_one_consistency, g) for g in geoms]
    return jobs


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("GWLOCAL_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(
    only: Iterable[str] | None = None,
    n_max: int = 10,
    lemma72_max: int = 60,
    binomial_max: int = 30,
    seeds: Sequence[int] = (0, 1, 2),
    localization_n_max: int = 8,
    workers: int | None = None,
) -> list[CheckResult]:
    """Run every requested check; results are sorted by (name, parameters)."""
    jobs = _jobs(only, n_max, lemma72_max, binomial_max, seeds, localization_n_max)
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_call, jobs))
    else:
        chunks = [_call(j) for j in jobs]
    results = [r for chunk in chunks for r in chunk]
    return sorted(results, key=lambda r: (r.name, r.parameters))
