import numpy as np
import pytest

from EntropyCore import ChannelBSC, h
from Errors import DomainError
from OverlapExponent import eta_interval, eta_objective, optimal_eta, overlap_exponent_B, overlap_plane

OMEGAS = np.linspace(0.02, 0.5, 20)


def test_eta_interval_bounds():
    iv = eta_interval(0.2, 0.2, 0.1)
    assert iv.lo == pytest.approx(0.01)
    assert iv.hi == pytest.approx(0.05)


def test_eta_interval_empty():
    assert eta_interval(0.5, 1.0, 0.01) is None


def test_eta_objective_at_zero_overlap():
    # lambda = 0: only the two outer terms remain
    assert eta_objective(0.0, 0.3, 0.0, 0.1) == pytest.approx(0.3 + 0.7 * 0.4689955935892812, abs=1e-9)


def test_identical_neighbours_give_zero():
    assert overlap_exponent_B(0.3, 0.0, ChannelBSC(0.1)) == pytest.approx(0.0, abs=1e-12)


def test_overlap_rejects_lambda_past_twice_omega():
    with pytest.raises(DomainError):
        overlap_exponent_B(0.1, 0.3, ChannelBSC(0.1))


def test_infeasible_pair_is_minus_infinity():
    assert overlap_exponent_B(0.5, 1.0, ChannelBSC(0.01)) == -np.inf


@pytest.mark.parametrize("omega, lam", [(0.2, 0.2), (0.3, 0.2), (0.25, 0.25), (0.4, 0.1)])
def test_plane_matches_scalar(omega, lam):
    ch = ChannelBSC(0.1)
    plane = overlap_plane(np.array([omega]), np.array([lam]), ch)
    assert plane[0] == pytest.approx(overlap_exponent_B(omega, lam, ch), abs=1e-7)


@pytest.mark.parametrize("p", [0.01, 0.1, 0.3])
def test_wider_pairs_overlap_less(p):
    # B(omega, lambda) <= B(omega, omega) for omega <= lambda <= 2 omega
    ch = ChannelBSC(p)
    W = OMEGAS[:, None]
    wide = overlap_plane(W, W * np.linspace(1.0, 2.0, 20)[None, :], ch)
    diagonal = overlap_plane(OMEGAS, OMEGAS, ch)[:, None]
    assert np.all(wide - diagonal <= 1e-9)


@pytest.mark.parametrize("p", [0.01, 0.1, 0.3])
def test_farther_first_neighbour_overlaps_more(p):
    # B(lambda, lambda) <= B(omega, lambda) for lambda <= omega
    ch = ChannelBSC(p)
    W = OMEGAS[:, None]
    L = W * np.linspace(0.05, 1.0, 20)[None, :]
    assert np.all(overlap_plane(L, L, ch) - overlap_plane(W, L, ch) <= 1e-9)


@pytest.mark.parametrize("omega, lam", [(0.2, 0.2), (0.3, 0.2), (0.4, 0.1)])
def test_optimal_eta_attains_the_overlap_exponent(omega, lam):
    ch = ChannelBSC(0.1)
    eta = optimal_eta(omega, lam, ch)
    assert eta_interval(omega, lam, ch.p).contains(eta)
    value = -omega - (1.0 - omega) * h(ch.p) + eta_objective(eta, omega, lam, ch.p)
    assert value == pytest.approx(overlap_exponent_B(omega, lam, ch), abs=1e-12)


def test_optimal_eta_of_an_infeasible_pair():
    assert optimal_eta(0.5, 1.0, ChannelBSC(0.01)) is None
