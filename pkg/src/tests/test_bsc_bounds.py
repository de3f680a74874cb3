import math

import numpy as np
import pytest

from BSCBounds import (BoundCurve, ExponentQuery, bound_theorem3, bound_theorem5, expurgation_Ex, random_coding_E0,
                       sphere_packing, straight_line, tabulate, theorem5_details, union_bound_low_rate)
from DistanceProfile import binomial_profile, lp_profile
from EntropyCore import ChannelBSC, divergence, gv_distance, pairwise_exponent_A
from Errors import DomainError, NumericalFailure
from LPRegion import R_bar
from OverlapExponent import eta_interval, optimal_eta


@pytest.fixture(scope="module")
def ch001() -> ChannelBSC:
    return ChannelBSC(0.01)


def test_sphere_packing_ends(ch001):
    assert sphere_packing(0.0, ch001) == pytest.approx(2.329178, abs=1e-4)
    assert sphere_packing(ch001.capacity, ch001) == pytest.approx(0.0, abs=1e-9)


def test_sphere_packing_meets_random_coding_at_critical_rate(ch001):
    assert sphere_packing(ch001.r_crit, ch001) == pytest.approx(0.17905, abs=1e-4)
    assert random_coding_E0(ch001.r_crit, ch001) == pytest.approx(divergence(ch001.rho, 0.01), abs=1e-12)


def test_sphere_packing_past_capacity(ch001):
    with pytest.raises(DomainError):
        sphere_packing(0.95, ch001)


@pytest.mark.parametrize("p", [0.01, 0.05, 0.2])
def test_random_coding_closed_forms_agree(p):
    ch = ChannelBSC(p)
    for R in np.linspace(0.0, ch.r_crit, 6):
        assert random_coding_E0(R, ch) == pytest.approx(1.0 - R - math.log2(1.0 + ch.u), abs=1e-9)


def test_random_coding_example(ch001):
    assert random_coding_E0(0.537, ch001) == pytest.approx(0.2011, abs=1e-3)


def test_random_coding_above_critical_rate(ch001):
    with pytest.raises(DomainError):
        random_coding_E0(0.6, ch001)


def test_expurgation_at_zero_rate(ch001):
    assert expurgation_Ex(0.0, ch001) == pytest.approx(1.164589, abs=1e-6)


def test_expurgation_meets_random_coding(ch001):
    assert expurgation_Ex(ch001.r_x, ch001) == pytest.approx(random_coding_E0(ch001.r_x, ch001), abs=1e-6)


def test_expurgation_decreasing(ch001):
    values = [expurgation_Ex(float(R), ch001) for R in np.linspace(0.0, ch001.r_x, 12)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_expurgation_domain(ch001):
    with pytest.raises(DomainError):
        expurgation_Ex(ch001.r_x + 0.01, ch001)


@pytest.mark.parametrize("p", [0.01, 0.05, 0.08, 0.10, 0.25])
def test_union_bound_touches_random_coding_at_r1(p):
    ch = ChannelBSC(p)
    r1 = R_bar(ch.delta1)
    lhs = -pairwise_exponent_A(ch.delta1, ch) - r1 + 1.0 - (1.0 - ch.r_x)
    assert lhs == pytest.approx(random_coding_E0(r1, ch), abs=1e-6)
    assert union_bound_low_rate(r1, ch) == pytest.approx(random_coding_E0(r1, ch), abs=2e-3)


def test_query_orders_its_variables():
    ExponentQuery(R=0.3, omega=0.3, lam=0.2, delta=0.1)
    with pytest.raises(DomainError):
        ExponentQuery(R=0.3, omega=0.2, lam=0.3, delta=0.1)


def test_curve_validation(ch001):
    with pytest.raises(DomainError):
        BoundCurve("bad", ch001, ((0.2, 1.0), (0.1, 1.2)))
    with pytest.raises(NumericalFailure):
        BoundCurve("bad", ch001, ((0.1, 1.0), (0.2, math.nan)))


def test_curve_interpolation(ch001):
    curve = BoundCurve("line", ch001, ((0.1, 1.0), (0.3, 0.5)))
    assert curve.value_at(0.2) == pytest.approx(0.75)
    assert curve.value_at(0.4) == math.inf


def test_tabulate_names_and_samples(ch001):
    curve = tabulate("sp", lambda R: sphere_packing(R, ch001), np.array([0.1, 0.2]), ch001)
    assert curve.name == "sp"
    assert curve.values == pytest.approx([sphere_packing(0.1, ch001), sphere_packing(0.2, ch001)])


def test_straight_line_through_sphere_packing_is_sphere_packing(ch001):
    rates = np.linspace(0.05, 0.5, 10)
    low = tabulate("sp", lambda R: sphere_packing(R, ch001), rates, ch001)
    line = straight_line(low, ch001, rate_step=0.01)
    for R, value in line.samples:
        assert value == pytest.approx(sphere_packing(R, ch001), abs=1e-9)


def test_straight_line_never_above_its_inputs(ch001, light):
    rates = np.arange(0.05, 0.3 + 1e-9, 0.01)
    low = tabulate("union", lambda R: union_bound_low_rate(R, ch001, light), rates, ch001)
    line = straight_line(low, ch001, rate_step=0.013)
    assert line.rates[0] == pytest.approx(0.05)
    for R, value in line.samples:
        assert value <= sphere_packing(R, ch001) + 1e-12
        if R <= low.rates[-1]:
            assert value <= low.value_at(R) + 1e-12


def test_straight_line_needs_a_curve_below_capacity(ch001):
    low = BoundCurve("full", ch001, ((0.1, 1.0), (ch001.capacity, 0.0)))
    with pytest.raises(NumericalFailure):
        straight_line(low, ch001)


@pytest.mark.parametrize("R", [0.05, 0.1])
def test_random_linear_profile_reaches_expurgation(R, light):
    ch = ChannelBSC(0.05)
    expected = -pairwise_exponent_A(gv_distance(R), ch)
    assert bound_theorem5(R, binomial_profile(R), ch, light) == pytest.approx(expected, abs=1e-3)


def test_theorem5_rejects_rate_outside_unit_interval(ch001):
    with pytest.raises(DomainError):
        bound_theorem5(1.2, binomial_profile(0.5), ch001)


def test_theorem3_rejects_rate_past_capacity(ch001):
    with pytest.raises(DomainError):
        bound_theorem3(0.95, ch001)


def test_lp_profile_improves_theorem3(ch001, light):
    gaps = {}
    for R in (0.05, 0.1, 0.2, 0.3, 0.35, 0.4, 0.45, 0.5, 0.6, 0.7, 0.8):
        thm5 = bound_theorem5(R, lp_profile(R, resolution=light), ch001, light)
        thm3 = bound_theorem3(R, ch001, light)
        assert thm5 <= thm3 + 1e-3
        gaps[R] = thm3 - thm5

    assert max(gaps[R] for R in (0.3, 0.35, 0.4, 0.45, 0.5)) > 1e-4


def test_theorem5_dominant_term_shifts(ch001, light):
    low = theorem5_details(0.1, lp_profile(0.1, resolution=light), ch001, light)
    high = theorem5_details(0.5, lp_profile(0.5, resolution=light), ch001, light)
    assert low.term == "spectrum"
    assert high.term == "overlap"
    assert low.value == pytest.approx(max(low.spectrum_term, low.overlap_term))


def test_overlap_query_carries_its_eta(ch001, light):
    found = theorem5_details(0.5, lp_profile(0.5, resolution=light), ch001, light)
    query = found.query
    assert found.term == "overlap"
    assert query.eta is not None
    assert eta_interval(query.omega, query.lam, ch001.p).contains(query.eta)
    assert query.eta == optimal_eta(query.omega, query.lam, ch001, light)


def test_spectrum_query_has_no_eta(ch001, light):
    found = theorem5_details(0.1, lp_profile(0.1, resolution=light), ch001, light)
    assert found.term == "spectrum"
    assert found.query.lam is None
    assert found.query.eta is None
