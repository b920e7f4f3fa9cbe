from fractions import Fraction as F
from math import comb, factorial, prod

import pytest

from gwlocal.exactmath import QSeries, TQSeries
from gwlocal.geometry import PRESETS, all_geometries, make_geometry
from gwlocal.genus1 import extremal_geometry
from gwlocal.ifunctions import (
    LadderError,
    a_coefficients,
    build_ladder,
    first_order_prediction,
    i_function_row,
    ipp_ladder,
    ladder_depth,
    mirror_map,
)

KP4 = PRESETS["kp4"]
O1O3 = PRESETS["o1x3_p3"]
O2O2 = PRESETS["o2x2_p3"]


def single_twist_mirror_oracle(n, order):
    return QSeries([0] + [F((-1) ** (n * d) * factorial(n * d), d * factorial(d) ** n) for d in range(1, order + 1)])


def summand_at_w(geom, d, w):
    """Evaluate the degree-d hypergeometric summand at a rational w directly."""
    num = prod((-c * w - s) for c in geom.twists for s in range(c * d))
    den = prod((w + s) ** (geom.base_dim + 1) for s in range(1, d + 1))
    return F(num) / den if d else F(1)


@pytest.mark.parametrize("geom", [PRESETS["o1cubed_p2"], O1O3, O2O2])
def test_split_rows_start_with_one_and_t(geom):
    row = i_function_row(geom, 3, 5)
    assert row.entries[0].to_qseries() == QSeries([1], 5)
    assert row.entries[1] == TQSeries.t(5)


def test_kp4_row_linear_entry():
    row = i_function_row(KP4, 2, 3)
    e = row.entries[1]
    assert e.coefficient(0, 1) == 1 and e.coefficient(1, 1) == 0
    assert e.coefficient(1, 0) == -120


def test_row_matches_pointwise_evaluation():
    # For fixed d the w-expansion is a Taylor expansion; check it reproduces
    # direct evaluation at a sample point to the truncation error order.
    geom = KP4
    row = i_function_row(geom, 6, 2)
    hyper = row.hypergeometric
    for d in (1, 2):
        w = F(1, 10**6)
        approx = sum(hyper[k][d] * w**k for k in range(7))
        exact = summand_at_w(geom, d, w)
        assert abs(approx - exact) < F(1, 10**30)


def test_ladder_first_steps_o1o3():
    lad = ipp_ladder(O1O3, 2, 6)
    assert lad.diagonal[1] == QSeries([1], 6)
    closed = QSeries([F(factorial(3 * d), factorial(d) ** 3) for d in range(7)])
    assert lad.diagonal[2] == closed
    assert lad.diagonal[2][1] == 6


def test_ladder_o2o2_matches_closed_form():
    lad = ipp_ladder(O2O2, 2, 6)
    closed = QSeries([F(factorial(2 * d) ** 2, factorial(d) ** 4) for d in range(7)])
    assert lad.diagonal[2] == closed


def test_ladder_kp4_first_diagonal():
    lad = ipp_ladder(KP4, 2, 6)
    closed = QSeries([F((-1) ** d * factorial(5 * d), factorial(d) ** 5) for d in range(7)])
    assert lad.diagonal[1] == closed
    assert lad.diagonal[1][1] == -120


def test_kp4_second_diagonal_is_quotient_rule_derivative():
    # I_{2,2} = 1 + theta((H_1 + theta H_2) / I_{1,1}) with H_k = [w^k] of the
    # hypergeometric factor; equals the naive 1 + theta(...)/I_{1,1} only at q^1.
    row = i_function_row(KP4, 2, 8)
    h = row.hypergeometric
    i11 = h[1].theta() + 1
    x = h[1] + h[2].theta()
    lad = ipp_ladder(KP4, 2, 8, row)
    assert lad.diagonal[2] == (x / i11).theta() + 1
    naive = x.theta() / i11 + 1
    assert lad.diagonal[2][1] == naive[1] == -770
    assert lad.diagonal[2][2] != naive[2]


@pytest.mark.parametrize("geom", all_geometries(10))
def test_diagonal_is_t_free_unit(geom):
    depth = ladder_depth(geom.dim)
    lad = ipp_ladder(geom, depth, 3)
    for p, diag in enumerate(lad.diagonal):
        assert diag[0] == 1
        assert lad[p, p].is_t_free()


def test_ladder_rejects_t_dependent_diagonal():
    bad = [TQSeries.from_qseries(QSeries([1], 2)), TQSeries([QSeries([0, 1], 2), QSeries([0, 1], 2)])]
    with pytest.raises(LadderError):
        build_ladder(bad, 1)


@pytest.mark.parametrize("geom", [g for g in all_geometries(9) if g.rank >= 2])
def test_split_geometries_have_trivial_mirror_and_first_diagonal(geom):
    assert mirror_map(geom, 5).is_zero()
    assert ipp_ladder(geom, 1, 5).diagonal[1] == QSeries([1], 5)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_single_twist_mirror_map_matches_factorial_formula(n):
    assert mirror_map(make_geometry(n - 1, [n]), 6) == single_twist_mirror_oracle(n, 6)


def test_mirror_map_examples():
    assert mirror_map(O2O2, 4).is_zero()
    f = mirror_map(KP4, 3)
    assert (f[0], f[1], f[2]) == (0, -120, 56700)
    g = mirror_map(PRESETS["kp2"], 3)
    assert (g[1], g[2]) == (-6, 45)


def test_a_coefficients_examples():
    assert a_coefficients(O1O3, 3)[0] == 0
    a = a_coefficients(KP4, 2)
    assert a[0] == -120
    # hand expansion: -5 * 24 * (5/1 + 5/2 + 5/3 + 5/4 - 5)
    assert a[1] == -650


def test_a_coefficients_against_taylor_oracle():
    # a_k via finite differences of the exact rational function at small w
    geom = make_geometry(3, [4])
    a = a_coefficients(geom, 3)
    n = geom.base_dim + 1

    def fun(w):
        return F((-1) ** n * prod(c * w + s for c in geom.twists for s in range(c))) / (w + 1) ** n

    eps = F(1, 10**8)
    assert abs((fun(eps) - fun(-eps)) / (2 * eps) - a[0]) < F(1, 10**10)


@pytest.mark.parametrize("geom", all_geometries(10))
def test_first_order_ladder_identity(geom):
    p_max = max(ladder_depth(geom.dim), 1)
    lad = ipp_ladder(geom, p_max, 1)
    a = a_coefficients(geom, p_max)
    assert lad.diagonal[1][1] == a[0]
    for p in range(1, p_max + 1):
        assert lad.diagonal[p][1] == first_order_prediction(a, p)
        assert first_order_prediction(a, p) == sum(a[k - 1] * comb(p - 1, k - 1) for k in range(1, p + 1))


@pytest.mark.parametrize("family, lo", [("all_ones", 1), ("ones_and_two", 2)])
def test_extremal_families_have_trivial_diagonal(family, lo):
    for l in range(lo, 6):
        g = extremal_geometry(family, l)
        lad = ipp_ladder(g, ladder_depth(g.dim), 6)
        for diag in lad.diagonal:
            assert diag == QSeries([1], 6)
