# Distance profiles beta(omega): the growth rate of the distance distribution of a code family
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from EntropyCore import EDGE_SLACK, entropy_array, gv_distance, h
from Errors import DomainError, NumericalFailure
from LPRegion import G, delta_bar
from Numerics import Interval, find_root
from PolyExponents import LPPoint, hahn_exponent_curve, hahn_exponent_q
from Settings import FINE, QUAD_TOL, ROOT_TOL, Resolution

SCAN_POINTS: int = 1001  # Grid used to locate the first omega where a profile turns nonnegative


@dataclass(frozen=True)
class DistanceProfile:
    name: str
    beta: Callable[[float], float]  # omega -> exponent (bits), NaN or -inf where no codewords are guaranteed
    delta_min: float  # Relative minimum distance, start of the support
    support_hi: float = 1.0  # End of the support
    existential: bool = False  # True when the profile only guarantees B_w for some w in the support
    beta_grid: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.delta_min <= self.support_hi + EDGE_SLACK or self.support_hi > 1.0 + EDGE_SLACK:
            raise DomainError(f"Profile '{self.name}' has an invalid support [{self.delta_min}, {self.support_hi}]")

    def __call__(self, omega: float) -> float:
        if omega < self.delta_min - EDGE_SLACK or omega > self.support_hi + EDGE_SLACK:
            return -math.inf
        value = self.beta(omega)
        return -math.inf if math.isnan(value) else value

    def sample(self, omegas: np.ndarray) -> np.ndarray:
        """beta on a grid, with -inf outside the support."""
        omegas = np.asarray(omegas, dtype=float)
        if self.beta_grid is not None:
            values = np.asarray(self.beta_grid(omegas), dtype=float)
        else:
            values = np.array([self.beta(float(w)) for w in omegas], dtype=float)

        inside = (omegas >= self.delta_min - EDGE_SLACK) & (omegas <= self.support_hi + EDGE_SLACK)
        return np.where(inside & ~np.isnan(values), values, -np.inf)


def binomial_profile(R: float) -> DistanceProfile:
    """Random linear codes: beta(omega) = R + h(omega) - 1 from the GV distance on."""
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"Rate must lie in [0, 1], got {R}")

    return DistanceProfile(
        name="binomial",
        beta=lambda w: R + h(w) - 1.0,
        delta_min=gv_distance(R),
        beta_grid=lambda ws: R + entropy_array(ws) - 1.0,
    )


def mu_exponent(R: float, alpha: float, omega: float, tol: float = QUAD_TOL) -> float:
    """
    Distance-distribution exponent guaranteed by the linear-programming argument.

    mu(R, alpha, omega) = R - 1 + h(tau) + 2h(alpha) - 2q(alpha, tau, omega/2) - omega
    - (1 - omega)h((alpha - omega/2)/(1 - omega)) with h(tau) = h(alpha) - 1 + R.
    """
    point = LPPoint.at_equality(alpha, R)
    g = G(point.alpha, point.tau)
    if not 0.0 <= omega <= g + EDGE_SLACK or omega / 2.0 > alpha + EDGE_SLACK:
        raise DomainError(f"omega={omega} must lie in [0, G={g}] with omega/2 <= alpha={alpha}")

    omega = min(omega, g)
    q = hahn_exponent_q(point.alpha, point.tau, omega / 2.0, tol)
    tail = 0.0 if omega >= 1.0 else (1.0 - omega) * h((alpha - omega / 2.0) / (1.0 - omega))

    return R - 1.0 + h(point.tau) + 2.0 * h(alpha) - 2.0 * q - omega - tail


def mu_curve(R: float, alpha: float, omegas: np.ndarray, tol: float = QUAD_TOL) -> np.ndarray:
    """mu(R, alpha, .) on an increasing grid inside [0, G(alpha, tau)]."""
    point = LPPoint.at_equality(alpha, R)
    g = G(point.alpha, point.tau)
    omegas = np.minimum(np.asarray(omegas, dtype=float), g)
    if omegas[0] < 0.0:
        raise DomainError("mu_curve needs nonnegative omegas")

    q = hahn_exponent_curve(point.alpha, point.tau, omegas / 2.0, tol)
    tail = (1.0 - omegas) * entropy_array(np.clip((alpha - omegas / 2.0) / (1.0 - omegas), 0.0, 1.0))

    return R - 1.0 + h(point.tau) + 2.0 * h(alpha) - 2.0 * q - omegas - tail


def lp_profile(R: float, alpha: float | None = None, resolution: Resolution = FINE) -> DistanceProfile:
    """
    The profile guaranteed for every code of rate R: some omega in [0, G(alpha, tau)] has
    B_omega >= 2^(n mu(R, alpha, omega)). alpha defaults to the minimizer behind delta_bar(R).
    """
    if alpha is None:
        alpha = delta_bar(R, resolution).argmin_alpha

    point = LPPoint.at_equality(alpha, R)

    return DistanceProfile(
        name=f"lp(alpha={alpha:.6f})",
        beta=lambda w: mu_exponent(R, point.alpha, w),
        delta_min=0.0,
        support_hi=G(point.alpha, point.tau),
        existential=True,
        beta_grid=lambda ws: mu_curve(R, point.alpha, ws),
    )


def first_nonnegative(beta: Callable[[float], float]) -> float:
    """Smallest omega in [0, 1] where beta turns nonnegative (grid scan, then bisection)."""
    omegas = np.linspace(0.0, 1.0, SCAN_POINTS)
    values = np.array([beta(float(w)) for w in omegas], dtype=float)
    hits = np.flatnonzero(values >= 0.0)  # NaN compares False

    if len(hits) == 0:
        raise DomainError("Profile never reaches a nonnegative exponent on [0, 1]")

    k = int(hits[0])
    if k == 0:
        return 0.0

    try:
        return find_root(beta, Interval(float(omegas[k - 1]), float(omegas[k])), ROOT_TOL)
    except NumericalFailure:
        return float(omegas[k])  # NaN on the left end of the cell


def script_profile(compiled, R: float) -> DistanceProfile:
    """Wraps a JIT-compiled profile script as a DistanceProfile at rate R."""
    beta = lambda w: compiled.beta(w, R)
    delta_min = compiled.delta_min(R)
    if delta_min is None or math.isnan(delta_min):
        delta_min = first_nonnegative(beta)

    return DistanceProfile(name=compiled.name, beta=beta, delta_min=min(max(delta_min, 0.0), 1.0))
