import math

import numpy as np
import pytest

from DistanceProfile import DistanceProfile, binomial_profile, first_nonnegative, lp_profile, mu_curve, mu_exponent
from EntropyCore import gv_distance, h
from Errors import DomainError
from LPRegion import G, delta_bar
from PolyExponents import LPPoint, krawtchouk_exponent_k


def test_binomial_profile_support():
    profile = binomial_profile(0.5)
    assert profile.delta_min == pytest.approx(gv_distance(0.5))
    assert profile(profile.delta_min) == pytest.approx(0.0, abs=1e-9)
    assert profile(0.5) == pytest.approx(0.5)
    assert profile(0.05) == -math.inf


def test_binomial_profile_grid_matches_pointwise():
    profile = binomial_profile(0.3)
    omegas = np.linspace(0.0, 1.0, 21)
    sampled = profile.sample(omegas)
    inside = omegas >= profile.delta_min
    assert np.all(np.isneginf(sampled[~inside]))
    assert sampled[inside] == pytest.approx([0.3 + h(float(w)) - 1.0 for w in omegas[inside]])


def test_profile_rejects_bad_support():
    with pytest.raises(DomainError):
        DistanceProfile(name="bad", beta=lambda w: 0.0, delta_min=0.6, support_hi=0.5)


def test_nan_reads_as_no_codewords():
    profile = DistanceProfile(name="nan", beta=lambda w: math.nan, delta_min=0.0)
    assert profile(0.3) == -math.inf


def test_mu_curve_matches_scalar():
    R = 0.4
    alpha = delta_bar(R).argmin_alpha
    point = LPPoint.at_equality(alpha, R)
    omegas = np.linspace(0.0, G(point.alpha, point.tau), 5)
    curve = mu_curve(R, alpha, omegas)
    assert curve == pytest.approx([mu_exponent(R, alpha, float(w)) for w in omegas], abs=1e-8)


def test_mu_rejects_omega_past_G():
    point = LPPoint.at_equality(0.4, 0.4)
    with pytest.raises(DomainError):
        mu_exponent(0.4, 0.4, G(point.alpha, point.tau) + 0.05)


def test_lp_profile_is_existential():
    profile = lp_profile(0.4)
    point = LPPoint.at_equality(delta_bar(0.4).argmin_alpha, 0.4)
    assert profile.existential
    assert profile.delta_min == 0.0
    assert profile.support_hi == pytest.approx(G(point.alpha, point.tau))


def test_first_nonnegative_finds_the_crossing():
    assert first_nonnegative(lambda w: w - 0.3) == pytest.approx(0.3, abs=1e-9)
    assert first_nonnegative(lambda w: 1.0) == 0.0


def test_first_nonnegative_without_crossing():
    with pytest.raises(DomainError):
        first_nonnegative(lambda w: -1.0)


@pytest.mark.parametrize("R", [0.1, 0.3, 0.5, 0.8])
def test_mu_vanishes_at_zero_distance(R):
    assert mu_exponent(R, 0.5, 0.0) == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("R", [0.1, 0.3, 0.5, 0.8])
@pytest.mark.parametrize("fraction", [0.25, 0.5, 0.9])
def test_mu_at_half_is_twice_the_krawtchouk_gap(R, fraction):
    tau = LPPoint.at_equality(0.5, R).tau
    omega = fraction * G(0.5, tau)
    expected = 2.0 * h(tau) - 2.0 * krawtchouk_exponent_k(tau, omega)
    assert mu_exponent(R, 0.5, omega) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("R", [0.1, 0.3, 0.5, 0.8])
def test_mu_at_the_support_end_is_binomial(R):
    tau = LPPoint.at_equality(0.5, R).tau
    g = G(0.5, tau)
    assert mu_exponent(R, 0.5, g) == pytest.approx(R - 1.0 + h(g), abs=1e-6)
