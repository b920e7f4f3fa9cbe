from fractions import Fraction as F
from math import factorial

import pytest

from gwlocal.exactmath import QSeries, series_compose, series_log
from gwlocal.geometry import PRESETS, all_geometries, make_geometry
from gwlocal.genus1 import (
    GenusOneSeries,
    conjecture_coefficients,
    conjecture_in_t,
    conjecture_invariants,
    degree_one_closed,
    extremal_closed,
    extremal_geometry,
    flat_coordinate_inverse,
    hypersurface_degree_one_closed,
    to_flat,
    zinger_hypersurface,
)
from gwlocal.ifunctions import i_function_row, ipp_ladder, mirror_map

KP4 = PRESETS["kp4"]
O1O3 = PRESETS["o1x3_p3"]
O2O2 = PRESETS["o2x2_p3"]


def closed_ln_form(k, weight, order):
    """-1/8 ln(1 - k q) - 1/2 ln(sum_d weight(d) q^d)."""
    base = QSeries([1, -k], order)
    central = QSeries([weight(d) for d in range(order + 1)])
    return series_log(base) * F(-1, 8) - series_log(central) * F(1, 2)


def test_conjecture_coefficients():
    assert conjecture_coefficients(5) == (F(1, 8), {1: F(2), 2: F(1, 2)})
    assert conjecture_coefficients(4) == (F(1, 24), {1: F(1)})
    assert conjecture_coefficients(3) == (F(1, 12), {1: F(1, 2)})
    assert conjecture_coefficients(2) == (F(0), {})


def test_o1o3_first_coefficient():
    assert conjecture_in_t(O1O3, 1)[1] == F(3, 8)


def test_o2o2_first_coefficient():
    assert conjecture_in_t(O2O2, 1)[1] == 0


def test_o1_cubed_first_coefficient():
    assert conjecture_in_t(PRESETS["o1cubed_p2"], 1)[1] == F(-1, 8)


def test_o1o3_matches_closed_ln_form():
    s = conjecture_invariants(O1O3, 12).series
    assert s == closed_ln_form(27, lambda d: F(factorial(3 * d), factorial(d) ** 3), 12)
    assert (s[1], s[2]) == (F(3, 8), F(153, 16))


def test_o2o2_matches_closed_ln_form():
    s = conjecture_invariants(O2O2, 12).series
    assert s == closed_ln_form(16, lambda d: F(factorial(2 * d) ** 2, factorial(d) ** 4), 12)
    assert [s[d] for d in range(1, 5)] == [0, 2, 32, 466]


def test_kp4_assembled_from_components():
    order = 8
    f = mirror_map(KP4, order)
    lad = ipp_ladder(KP4, 2, order)
    by_hand = (
        f * F(3, 8)
        - series_log(QSeries([1, 3125], order)) * F(1, 8)
        - series_log(lad.diagonal[1]) * 2
        - series_log(lad.diagonal[2]) * F(1, 2)
    )
    assert conjecture_in_t(KP4, order) == by_hand
    assert conjecture_invariants(KP4, order).series == to_flat(by_hand, f)


def test_kp2_values():
    s = conjecture_invariants(PRESETS["kp2"], 4)
    assert [s[d] for d in range(1, 5)] == [F(1, 4), F(-3, 8), F(-23, 3), F(3437, 16)]


def test_flat_equals_algebraic_for_split_bundles():
    for g in all_geometries(7):
        if g.rank >= 2:
            s = conjecture_invariants(g, 4)
            assert s.series == conjecture_in_t(g, 4)


def test_flat_coordinate_round_trip():
    f = mirror_map(KP4, 9)
    inv = flat_coordinate_inverse(f)
    assert inv[1] == 1 and inv[2] == 120
    q = QSeries.variable(9)
    assert to_flat(q, QSeries([0], 9)) == q
    assert series_compose(to_flat(q, f), (f.exp()).shift(1)) == q


def test_genus_one_series_rejects_constant():
    with pytest.raises(ValueError):
        GenusOneSeries(O1O3, "flat_Q", QSeries([1, 1]))
    s = conjecture_invariants(O1O3, 2)
    with pytest.raises(KeyError):
        s[0]
    assert set(s.values) == {1, 2}


@pytest.mark.parametrize(
    "geom, value",
    [(PRESETS["kp2"], F(1, 4)), (O1O3, F(3, 8)), (O2O2, F(0)), (KP4, F(1515, 8)), (PRESETS["o1cubed_p2"], F(-1, 8))],
)
def test_degree_one_closed_examples(geom, value):
    assert degree_one_closed(geom) == value


@pytest.mark.parametrize("geom", all_geometries(10))
def test_degree_one_matches_closed_form(geom):
    assert conjecture_invariants(geom, 1)[1] == degree_one_closed(geom)


def test_extremal_examples():
    assert extremal_closed("all_ones", 1, 3) == F(1, 36)
    assert extremal_closed("ones_and_two", 2, 1) == F(-1, 6)
    assert extremal_closed("all_ones", 2, 1) == F(-1, 8)
    assert conjecture_invariants(make_geometry(2, [1, 1, 1]), 1)[1] == F(-1, 8)


def test_extremal_rejects_bad_input():
    with pytest.raises(ValueError):
        extremal_closed("all_ones", 2, 0)
    with pytest.raises(ValueError):
        extremal_geometry("other", 2)


@pytest.mark.parametrize("family, l", [(f, l) for f in ("all_ones", "ones_and_two") for l in range(1, 6) if not (f == "ones_and_two" and l < 2)])
def test_extremal_families_match_closed_form(family, l):
    s = conjecture_invariants(extremal_geometry(family, l), 12)
    for d in range(1, 13):
        assert s[d] == extremal_closed(family, l, d)


def test_quintic_degree_one():
    assert zinger_hypersurface(5, 1)[1] == F(2875, 12)
    assert hypersurface_degree_one_closed(5) == F(2875, 12)


@pytest.mark.parametrize("n", [3, 4, 6, 7, 8])
def test_hypersurface_two_paths(n):
    assert zinger_hypersurface(n, 1)[1] == hypersurface_degree_one_closed(n)


def test_hypersurface_needs_n_at_least_three():
    with pytest.raises(ValueError):
        zinger_hypersurface(2, 1)
