# Exponent B(omega, lambda) of the conditional probability that two neighbours of a codeword overlap
import math

import numpy as np

from EntropyCore import EDGE_SLACK, ChannelBSC, entropy_array, h
from Errors import DomainError
from Numerics import Interval, OptimResult, bisect_array, maximize_1d
from Settings import FINE, Resolution


def eta_interval(omega: float, lam: float, p: float) -> Interval | None:
    """
    Feasible range of the overlap variable eta.

    [lam*p/2, min(lam/4, p(1-omega))] intersected with the range where every entropy
    argument of the objective stays in [0, 1]. None when the range is empty.
    """
    lo = max(lam * p / 2.0, (lam - omega) / 2.0, lam / 2.0 - (1.0 - p) * (1.0 - omega), 0.0)
    hi = min(lam / 4.0, p * (1.0 - omega), omega / 2.0)

    if lo > hi + EDGE_SLACK:
        return None

    return Interval(min(lo, hi), hi)


def _weighted_h(coefficient: float, x: float) -> float:
    """coefficient*h(x), zero when the coefficient vanishes, -inf when x leaves [0, 1]."""
    if coefficient <= 0.0:
        return 0.0
    if not -EDGE_SLACK <= x <= 1.0 + EDGE_SLACK:
        return -math.inf
    return coefficient * h(min(max(x, 0.0), 1.0))


def eta_objective(eta: float, omega: float, lam: float, p: float) -> float:
    """lam*h(2eta/lam) + (omega - lam/2)h((omega - 2eta)/(2omega - lam)) + (1 - omega - lam/2)h((p(1-omega) - eta)/(1 - omega - lam/2))."""
    c2 = omega - lam / 2.0
    c3 = 1.0 - omega - lam / 2.0

    total = _weighted_h(lam, 2.0 * eta / lam if lam > 0.0 else 0.0)
    total += _weighted_h(c2, (omega - 2.0 * eta) / (2.0 * c2) if c2 > 0.0 else 0.0)
    total += _weighted_h(c3, (p * (1.0 - omega) - eta) / c3 if c3 > 0.0 else 0.0)
    return total


def _check_pair(omega: float, lam: float) -> None:
    if not 0.0 <= omega <= 1.0:
        raise DomainError(f"omega={omega} lies outside [0, 1]")
    if not 0.0 <= lam <= 2.0 * omega + EDGE_SLACK:
        raise DomainError(f"lambda={lam} must satisfy 0 <= lambda <= 2*omega={2.0 * omega}")


def _eta_search(omega: float, lam: float, ch: ChannelBSC, resolution: Resolution) -> OptimResult | None:
    _check_pair(omega, lam)

    iv = eta_interval(omega, lam, ch.p)
    if iv is None:
        return None

    found = maximize_1d(lambda eta: eta_objective(eta, omega, lam, ch.p), iv, resolution.grid, resolution.refine_tol)
    return found if math.isfinite(found.value) else None


def optimal_eta(omega: float, lam: float, ch: ChannelBSC, resolution: Resolution = FINE) -> float | None:
    """The eta attaining B(omega, lambda); None when no eta is feasible."""
    found = _eta_search(omega, lam, ch, resolution)
    return None if found is None else found.arg


def overlap_exponent_B(omega: float, lam: float, ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    """
    B(omega, lambda) = -omega - (1-omega)h(p) + max over eta of the overlap objective.

    Args:
        omega (float): Relative distance d_ij/n.
        lam (float): Relative distance d_jk/n, at most 2*omega.
        ch (ChannelBSC): The channel.
        resolution (Resolution): Grid and refinement of the eta search.

    Returns:
        float: The exponent, or -inf when no eta is feasible.
    """
    found = _eta_search(omega, lam, ch, resolution)
    if found is None:
        return -math.inf

    return -omega - (1.0 - omega) * h(ch.p) + found.value


def _weighted_entropy_array(coefficient: np.ndarray, numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.clip(numerator / denominator, 0.0, 1.0)
        value = coefficient * entropy_array(x)
    return np.where(coefficient > 0.0, value, 0.0)


def overlap_plane(omegas: np.ndarray, lams: np.ndarray, ch: ChannelBSC) -> np.ndarray:
    """
    B on a broadcast grid of (omega, lambda).

    The eta objective is concave, so its maximizer is the sign change of the derivative
    2log2((lam-2eta)/(2eta)) - log2((omega-lam+2eta)/(omega-2eta))
    - log2(((1-p)(1-omega)-lam/2+eta)/(p(1-omega)-eta)), clipped to the feasible range.
    Infeasible cells hold -inf.
    """
    W, L = np.broadcast_arrays(np.asarray(omegas, dtype=float), np.asarray(lams, dtype=float))
    p = ch.p
    zero = np.zeros(W.shape)

    lo = np.maximum.reduce([L * p / 2.0, (L - W) / 2.0, L / 2.0 - (1.0 - p) * (1.0 - W), zero])
    hi = np.minimum.reduce([L / 4.0, p * (1.0 - W), W / 2.0])
    feasible = (L <= 2.0 * W + EDGE_SLACK) & (lo <= hi + EDGE_SLACK) & (W <= 1.0)
    hi = np.maximum(hi, lo)

    def slope(eta: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            first = 2.0 * np.log2((L - 2.0 * eta) / (2.0 * eta))
            second = np.log2((W - L + 2.0 * eta) / (W - 2.0 * eta))
            third = np.log2(((1.0 - p) * (1.0 - W) - L / 2.0 + eta) / (p * (1.0 - W) - eta))
        return first - second - third

    eta = bisect_array(slope, lo, hi)

    c2 = W - L / 2.0
    c3 = 1.0 - W - L / 2.0
    total = _weighted_entropy_array(L, 2.0 * eta, L)
    total += _weighted_entropy_array(c2, W - 2.0 * eta, 2.0 * c2)
    total += _weighted_entropy_array(c3, p * (1.0 - W) - eta, c3)

    value = -W - (1.0 - W) * h(p) + total
    return np.where(feasible, value, -np.inf)
