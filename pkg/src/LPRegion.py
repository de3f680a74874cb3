# Linear-programming bound on the relative minimum distance and its inverse
import math
from dataclasses import dataclass
from functools import lru_cache

from EntropyCore import EDGE_SLACK, h, h_inv
from Errors import DomainError
from Numerics import Interval, maximize_1d, minimize_1d
from PolyExponents import LPPoint
from Settings import DISCRIMINANT_CLAMP, FINE, Resolution


@dataclass(frozen=True)
class LPDistanceResult:
    delta_bar: float  # Upper bound on the relative minimum distance at rate R
    argmin_alpha: float  # Minimizing alpha
    tau_of_alpha: float  # tau with h(tau) = h(alpha) - 1 + R


def G(alpha: float, tau: float) -> float:
    """G(alpha, tau) = 2(alpha(1-alpha) - tau(1-tau)) / (1 + 2 sqrt(tau(1-tau)))."""
    if not 0.0 <= tau <= alpha + EDGE_SLACK or alpha > 0.5:
        raise DomainError(f"G needs 0 <= tau <= alpha <= 1/2, got alpha={alpha}, tau={tau}")

    s = tau * (1.0 - tau)
    return max(2.0 * (alpha * (1.0 - alpha) - s) / (1.0 + 2.0 * math.sqrt(s)), 0.0)


def lp_alpha_range(R: float) -> Interval:
    """alpha values for which some tau >= 0 meets h(tau) = h(alpha) - 1 + R."""
    if not 0.0 < R < 1.0:
        raise DomainError(f"Rate must satisfy 0 < R < 1, got {R}")
    return Interval(h_inv(1.0 - R), 0.5)


def delta_bar(R: float, resolution: Resolution = FINE) -> LPDistanceResult:
    """
    Minimizes G(alpha, tau(alpha)) over alpha in [h^-1(1 - R), 1/2].

    Args:
        R (float): Rate in (0, 1).
        resolution (Resolution): Grid and refinement of the alpha search.

    Returns:
        LPDistanceResult: The bound, its minimizing alpha and the matching tau.
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"delta_bar needs 0 < R < 1, got {R}")
    return _delta_bar_cached(float(R), resolution.grid, resolution.refine_tol)


@lru_cache(maxsize=8192)
def _delta_bar_cached(R: float, grid: int, refine_tol: float) -> LPDistanceResult:
    def objective(alpha: float) -> float:
        point = LPPoint.at_equality(alpha, R)
        return G(point.alpha, point.tau)

    found = minimize_1d(objective, lp_alpha_range(R), grid, refine_tol)
    tau = LPPoint.at_equality(found.arg, R).tau

    return LPDistanceResult(delta_bar=found.value, argmin_alpha=found.arg, tau_of_alpha=tau)


def tau_nu(nu: float, xi: float) -> float:
    """tau_nu(xi) = (1/2)(1 - sqrt(1 - 4(sqrt(nu(1-nu) - xi(1-xi)) - xi)^2))."""
    inner = nu * (1.0 - nu) - xi * (1.0 - xi)
    if inner < -DISCRIMINANT_CLAMP:
        raise DomainError(f"tau_nu needs nu(1-nu) >= xi(1-xi), got nu={nu}, xi={xi}")

    s = math.sqrt(max(inner, 0.0)) - xi
    outer = 1.0 - 4.0 * s * s
    if outer < -DISCRIMINANT_CLAMP:
        raise DomainError(f"tau_nu outer square root is negative at nu={nu}, xi={xi}")

    return 0.5 * (1.0 - math.sqrt(max(outer, 0.0)))


def R_bar(delta: float, resolution: Resolution = FINE) -> float:
    """
    Inverse of delta_bar: 1 + min over alpha of h(tau_alpha(delta/2)) - h(alpha).

    Args:
        delta (float): Relative distance in (0, 1/2].
        resolution (Resolution): Grid and refinement of the alpha search.

    Returns:
        float: The rate R_bar(delta).
    """
    if not 0.0 < delta <= 0.5:
        raise DomainError(f"R_bar needs 0 < delta <= 1/2, got {delta}")

    lo = 0.5 * (1.0 - math.sqrt(max(1.0 - 2.0 * delta, 0.0)))
    if lo > 0.5:
        raise DomainError(f"Empty alpha range for delta={delta}")

    def negated(alpha: float) -> float:
        return h(alpha) - h(tau_nu(alpha, delta / 2.0))

    found = maximize_1d(negated, Interval(lo, 0.5), resolution.grid, resolution.refine_tol)
    return 1.0 - found.value
