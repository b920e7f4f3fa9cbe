from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from gwlocal.exactmath import (
    BiSeries,
    LaurentSeries,
    QSeries,
    SeriesError,
    TQSeries,
    TruncationError,
    format_rational,
    laurent_at,
    laurent_residue,
    residue_at,
    residue_at_infinity,
    series_arith,
    series_compose,
    series_d_dt,
    series_exp,
    series_log,
    series_reversion,
)

Q = QSeries


def naive_mul(a, b, order):
    return [sum((a[i] * b[k - i] for i in range(k + 1)), F(0)) for k in range(order + 1)]


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def series(order=6, constant=None):
    coeffs = st.lists(rationals, min_size=order + 1, max_size=order + 1)
    if constant is None:
        return coeffs.map(Q)
    return coeffs.map(lambda c: Q([constant] + c[1:]))


# -- arithmetic ----------------------------------------------------------------


def test_difference_of_squares():
    assert Q([1, 1], 4) * Q([1, -1], 4) == Q([1, 0, -1], 4)


def test_geometric_series():
    assert 1 / Q([1, -1], 6) == Q([1] * 7)


def test_long_division_checked_by_multiplication():
    num = Q([1, 6, 90, 1680])
    quotient = series_arith(num, Q([1, 6], 3), "div")
    # hand check: (1 + 6q)(1 + 90q^2 + 1140q^3) = 1 + 6q + 90q^2 + 1680q^3
    assert quotient == Q([1, 0, 90, 1140])
    assert Q([1, 6], 3) * quotient == num


def test_division_by_nonunit_rejected():
    with pytest.raises(SeriesError):
        Q([1, 2], 3) / Q([0, 1], 3)


def test_truncation_is_minimum_and_out_of_range_is_error():
    s = Q([1, 2, 3], 5) + Q([1], 2)
    assert s.order == 2
    with pytest.raises(TruncationError):
        s[3]
    assert (Q([1], 7) * Q([2], 3)).order == 3


@given(series(), series())
def test_integer_convolution_matches_naive(a, b):
    assert list((a * b).coeffs) == naive_mul(a, b, 6)


@settings(max_examples=40)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) - b == a


@given(series(constant=1), series(constant=F(3, 2)))
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a


def test_coefficients_are_normalized():
    s = Q([F(2, 4), F(-3, 6)])
    assert s[0].numerator == 1 and s[0].denominator == 2
    assert s[1] == F(-1, 2) and s[1].denominator > 0
    assert format_rational(F(6, 3)) == "2"
    assert format_rational(F(-3, 8)) == "-3/8"


# -- log / exp ------------------------------------------------------------------


def test_mercator():
    assert series_log(Q([1, 1], 6)) == Q([0] + [F((-1) ** (k + 1), k) for k in range(1, 7)])


def test_log_one():
    assert series_log(Q([1], 5)).is_zero()


def test_log_of_square_is_twice_log():
    s = Q([1, 1], 8)
    assert series_log(s * s) == series_log(s) * 2


def test_log_needs_unit_constant():
    with pytest.raises(SeriesError):
        series_log(Q([2, 1]))


def test_exp_examples():
    assert series_exp(Q([0], 4)) == Q([1], 4)
    assert series_exp(Q([0, 1], 7)) == Q([F(1, factorial(k)) for k in range(8)])
    with pytest.raises(SeriesError):
        series_exp(Q([1, 1]))


def test_exp_log_round_trip_example():
    s = Q([0, 3, F(-7, 2)], 10)
    assert series_log(series_exp(s)) == s


@settings(max_examples=30)
@given(series(order=7, constant=0))
def test_exp_log_inverse(s):
    assert series_log(series_exp(s)) == s
    assert series_exp(series_log(series_exp(s))) == series_exp(s)


# -- d/dt -----------------------------------------------------------------------


def test_d_dt_of_t():
    assert series_d_dt(TQSeries.t(3)) == TQSeries.from_qseries(Q([1], 3))


def test_d_dt_of_pure_q_series_is_theta():
    s = Q([5, 1, 2, 3])
    assert series_d_dt(TQSeries.from_qseries(s)).to_qseries() == Q([0, 1, 4, 9])


def test_d_dt_product_rule():
    # t^2/2 * q -> t q + t^2/2 q
    s = TQSeries([Q([0], 3), Q([0], 3), Q([0, F(1, 2)], 3)])
    out = series_d_dt(s)
    assert out.coefficient(1, 1) == 1
    assert out.coefficient(1, 2) == F(1, 2)
    assert out.coefficient(1, 0) == 0
    assert out.t_degree == 2


@given(series())
def test_d_dt_commutes_with_embedding(s):
    assert series_d_dt(TQSeries.from_qseries(s)).to_qseries() == s.theta()


def test_t_degree_cap():
    parts = [Q([0], 1)] * 4 + [Q([1], 1)]
    with pytest.raises(SeriesError):
        TQSeries(parts)  # cap is order + 2 = 3
    assert TQSeries(parts, t_cap=4).t_degree == 4


def test_tq_to_qseries_requires_t_free():
    with pytest.raises(SeriesError):
        TQSeries.t(2).to_qseries()


# -- composition and reversion ----------------------------------------------------


def test_compose_geometric_with_square():
    assert series_compose(Q([1] * 9), Q([0, 0, 1], 8)) == Q([1, 0, 1, 0, 1, 0, 1, 0, 1])


def test_compose_with_zero_inner():
    assert series_compose(Q([7, 1, 2], 2), Q([0], 2)) == Q([7], 2)


def test_log_of_exp_minus_one_is_identity():
    n = 9
    log1p = Q([0] + [F((-1) ** (k + 1), k) for k in range(1, n + 1)])
    expm1 = series_exp(Q([0, 1], n)) - 1
    assert series_compose(log1p, expm1) == Q.variable(n)


def test_compose_needs_zero_constant():
    with pytest.raises(SeriesError):
        series_compose(Q([1, 1]), Q([1, 1]))


def test_reversion_identity():
    assert series_reversion(Q.variable(6)) == Q.variable(6)


def test_reversion_of_q_plus_q2():
    r = series_reversion(Q([0, 1, 1], 4))
    assert r == Q([0, 1, -1, 2, -5])
    assert series_compose(Q([0, 1, 1], 4), r) == Q.variable(4)


def test_reversion_of_kp4_mirror_coordinate():
    from gwlocal.genus1 import flat_coordinate_inverse
    from gwlocal.geometry import PRESETS
    from gwlocal.ifunctions import mirror_map

    f = mirror_map(PRESETS["kp4"], 10)
    big_q = series_exp(f).shift(1)
    assert big_q[2] == -120
    assert series_compose(big_q, flat_coordinate_inverse(f)) == Q.variable(10)


def test_reversion_rejects_degenerate_input():
    with pytest.raises(SeriesError):
        series_reversion(Q([0, 0, 1]))
    with pytest.raises(SeriesError):
        series_reversion(Q([1, 1]))


def test_reversion_debug_check_runs():
    assert series_reversion(Q([0, 2, 3, 1], 5), check=True)[1] == F(1, 2)


@settings(max_examples=25)
@given(st.lists(rationals, min_size=6, max_size=6), rationals.filter(lambda x: x != 0))
def test_reversion_round_trip(tail, lead):
    s = Q([0, lead] + tail)
    r = series_reversion(s)
    assert series_compose(s, r) == Q.variable(7)
    assert series_compose(r, s) == Q.variable(7)


# -- bivariate ------------------------------------------------------------------


def test_biseries_truncates_both_variables():
    a = BiSeries([Q([1, 1], 3), Q([0, 1], 3), Q([2], 3)])
    b = BiSeries([Q([1], 2), Q([1, 1], 2)])
    c = a * b
    assert c.x_order == 1 and c.q_order == 2
    assert c[0] == Q([1, 1], 2)
    assert c[1] == Q([1, 1], 2) * Q([1, 1], 2) + Q([0, 1], 2)
    with pytest.raises(TruncationError):
        c[2]


# -- residues ---------------------------------------------------------------------


def test_residue_of_simple_pole():
    assert residue_at([1], [(0, 1)], 0) == 1


def test_residue_of_double_pole_is_zero():
    assert residue_at([1], [(0, 2)], 0) == 0


def test_residue_lemma_shape_example():
    # (2w+1)(3w+1)(3w+2) = 2 + 13w + 27w^2 + 18w^3
    numer = [2, 13, 27, 18]
    assert residue_at(numer, [(-1, 1), (0, 1)], 0) == 2


def test_laurent_window_and_truncation():
    f = laurent_at([1], [(0, 3)], 0, 2)
    assert f.min_exponent == -3 and f.max_exponent == -2
    with pytest.raises(TruncationError):
        laurent_residue(f)
    g = LaurentSeries(-2, [1, 5, 7])
    assert g.residue() == 5


def test_residue_at_infinity_of_one_over_w():
    assert residue_at_infinity([1], [(0, 1)]) == -1
    assert residue_at_infinity([0, 0, 1], [(0, 1)]) == 0  # f = w: polynomial, no residue


@settings(max_examples=40)
@given(
    st.lists(st.integers(-5, 5), min_size=1, max_size=5),
    st.lists(st.tuples(st.integers(-4, 4), st.integers(1, 3)), min_size=1, max_size=3, unique_by=lambda t: t[0]),
)
def test_global_residue_theorem(numer, factors):
    total = sum(residue_at(numer, factors, r) for r, _ in factors) + residue_at_infinity(numer, factors)
    assert total == 0


def test_residue_against_partial_fraction_oracle():
    # 1/((w-1)(w-2)) = -1/(w-1) + 1/(w-2)
    factors = [(1, 1), (2, 1)]
    assert residue_at([1], factors, 1) == -1
    assert residue_at([1], factors, 2) == 1
    assert residue_at([1], factors, 3) == 0
