import math

import numpy as np
import pytest

from AWGNBounds import (AWGNLandmarks, ChannelAWGN, E0_awgn, EU_awgn, bits_to_nats, landmarks_awgn, nats_to_bits,
                        psi, r_star, theta_bar)
from Errors import DomainError


@pytest.fixture(scope="module")
def a2() -> ChannelAWGN:
    return ChannelAWGN(2.0)


def test_channel_constants_at_a2(a2):
    assert a2.r_x == pytest.approx(0.0941, abs=1e-4)
    assert a2.r_crit == pytest.approx(0.2674, abs=1e-4)
    assert math.cos(a2.theta_x) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-12)


@pytest.mark.parametrize("a", [0.0, -1.0, math.inf])
def test_channel_rejects_bad_snr(a):
    with pytest.raises(DomainError):
        ChannelAWGN(a)


def test_psi_at_theta_x(a2):
    assert psi(a2.theta_x) == pytest.approx(0.199, abs=1e-3)


def test_psi_vanishes_at_right_angle():
    assert psi(math.pi / 2.0) == pytest.approx(0.0, abs=1e-12)


def test_psi_decreasing():
    values = [psi(t) for t in np.linspace(0.05, math.pi / 2.0, 30)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_psi_domain():
    with pytest.raises(DomainError):
        psi(0.0)


@pytest.mark.parametrize("R", [0.05, 0.2, 0.6])
def test_theta_bar_inverts_psi(R):
    assert psi(theta_bar(R)) == pytest.approx(R, abs=1e-9)


def test_theta_bar_domain():
    with pytest.raises(DomainError):
        theta_bar(0.0)


def test_random_coding_example(a2):
    assert E0_awgn(0.199, a2) == pytest.approx(0.1880, abs=1e-3)


def test_random_coding_past_critical_rate(a2):
    with pytest.raises(DomainError):
        E0_awgn(0.3, a2)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 4.0])
def test_union_bound_touches_random_coding_at_r1(a):
    ch = ChannelAWGN(a)
    r1 = psi(ch.theta_x)
    assert EU_awgn(r1, ch) == pytest.approx(E0_awgn(r1, ch), abs=1e-6)


def test_r_star_at_a2(a2):
    assert r_star(a2) == pytest.approx(0.263, abs=1e-3)


def test_landmarks_at_a2(a2):
    marks = landmarks_awgn(a2)
    assert (marks.r_x, marks.r1, marks.r_star, marks.r_crit) == pytest.approx((0.094, 0.199, 0.263, 0.267), abs=1e-3)
    assert marks.applicable
    assert marks.tight_window == pytest.approx((marks.r1, marks.r_crit))


def test_small_snr_is_applicable():
    assert landmarks_awgn(ChannelAWGN(0.5)).applicable


@pytest.mark.parametrize("a, applicable", [(5.5, True), (7.0, False)])
def test_applicability_ends_near_snr_5_7(a, applicable):
    assert landmarks_awgn(ChannelAWGN(a)).applicable == applicable


def test_landmark_record_without_window():
    marks = AWGNLandmarks(a=9.0, r_x=0.5, theta_x=0.6, r_crit=0.8, r1=0.6, r_star=None, applicable=False)
    assert marks.tight_window is None


def test_unit_conversion():
    assert nats_to_bits(math.log(2.0)) == pytest.approx(1.0)
    assert bits_to_nats(nats_to_bits(0.3)) == pytest.approx(0.3)
