import math

import numpy as np
import pytest

from EntropyCore import (ChannelBSC, divergence, entropy_array, gv_distance, h, h_inv, pairwise_exponent_A,
                         phi)
from Errors import DomainError


@pytest.mark.parametrize("x, expected", [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (0.11, 0.49991)])
def test_entropy_values(x, expected):
    assert h(x) == pytest.approx(expected, abs=1e-5)


def test_entropy_snaps_rounding_at_the_ends():
    assert h(-1e-15) == 0.0
    assert h(1.0 + 1e-15) == 0.0


def test_entropy_rejects_outside_unit_interval():
    with pytest.raises(DomainError):
        h(1.5)


def test_entropy_array_marks_outside_with_nan():
    values = entropy_array(np.array([-0.1, 0.0, 0.25, 1.0, 1.1]))
    assert np.isnan(values[0]) and np.isnan(values[-1])
    assert values[1:4] == pytest.approx([0.0, h(0.25), 0.0])


@pytest.mark.parametrize("y, expected", [(0.0, 0.0), (1.0, 0.5), (0.5, 0.1100)])
def test_inverse_entropy(y, expected):
    assert h_inv(y) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize("y", np.linspace(0.05, 0.95, 7))
def test_inverse_entropy_round_trip(y):
    assert h(h_inv(y)) == pytest.approx(y, abs=1e-10)


def test_divergence_values():
    assert divergence(0.25, 0.01) == pytest.approx(0.8606, abs=1e-4)
    assert divergence(0.0, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert divergence(0.3, 0.3) == pytest.approx(0.0, abs=1e-12)


def test_divergence_rejects_degenerate_reference():
    with pytest.raises(DomainError):
        divergence(0.2, 0.0)


def test_gv_distance():
    assert gv_distance(0.0) == 0.5
    assert gv_distance(0.5) == pytest.approx(0.1100, abs=1e-4)
    assert gv_distance(1.0) == 0.0


def test_phi_ends():
    assert phi(0.5) == pytest.approx(0.0, abs=1e-12)
    assert phi(0.0) == pytest.approx(1.0, abs=1e-12)


def test_pairwise_exponent():
    ch = ChannelBSC(0.01)
    assert pairwise_exponent_A(0.5, ch) == pytest.approx(-1.164589, abs=1e-5)
    assert pairwise_exponent_A(1.0, ch) == pytest.approx(2.0 * pairwise_exponent_A(0.5, ch))
    assert pairwise_exponent_A(0.0, ch) == 0.0


@pytest.mark.parametrize("p", [0.0, 0.5, -0.1, 0.7])
def test_channel_rejects_bad_crossover(p):
    with pytest.raises(DomainError):
        ChannelBSC(p)


def test_channel_constants_at_p_001():
    ch = ChannelBSC(0.01)
    assert ch.r_crit == pytest.approx(0.559, abs=1e-3)
    assert ch.delta1 == pytest.approx(0.16597, abs=1e-4)
    assert ch.capacity == pytest.approx(1.0 - h(0.01))
    assert ch.r_x < ch.r_crit < ch.capacity


@pytest.mark.parametrize("p", [0.05, 0.08, 0.10, 0.25])
def test_tangency_identity(p):
    ch = ChannelBSC(p)
    assert h(ch.delta1) + ch.delta1 * ch.log2_u == pytest.approx(math.log2(1.0 + ch.u), abs=1e-9)


@pytest.mark.parametrize("x", np.linspace(0.0, 0.45, 10))
def test_entropy_symmetry_and_inverse(x):
    assert h(x) == pytest.approx(h(1.0 - x), abs=1e-12)
    assert h_inv(h(x)) == pytest.approx(x, abs=1e-9)


def test_divergence_nonnegative_on_grid():
    grid = np.linspace(0.01, 0.99, 15)
    values = np.array([[divergence(x, y) for y in grid] for x in grid])
    assert np.all(values >= -1e-15)
    assert np.diag(values) == pytest.approx(np.zeros(len(grid)), abs=1e-12)


@pytest.mark.parametrize("p", [0.01, 0.1, 0.3])
def test_delta1_identity(p):
    ch = ChannelBSC(p)
    assert ch.delta1 == pytest.approx(ch.u / (1.0 + ch.u), abs=1e-12)


def test_pairwise_exponent_strictly_decreasing():
    ch = ChannelBSC(0.1)
    values = [pairwise_exponent_A(w, ch) for w in np.linspace(0.0, 1.0, 11)]
    assert all(b < a for a, b in zip(values, values[1:]))
