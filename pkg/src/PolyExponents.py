# Exponents of Krawtchouk and Hahn polynomials
import math
from dataclasses import dataclass

import numpy as np

from EntropyCore import EDGE_SLACK, h, h_inv
from Errors import DomainError, NumericalFailure
from Numerics import Interval, cumulative_integrate, integrate
from Settings import DISCRIMINANT_CLAMP, LEVEL_SLACK, QUAD_TOL


def _clamped_sqrt(disc: float, where: str) -> float:
    """Square root of a discriminant, reading small negatives as 0."""
    if disc >= 0.0:
        return math.sqrt(disc)
    if disc >= -DISCRIMINANT_CLAMP:
        return 0.0
    raise NumericalFailure(f"Negative discriminant {disc:.3e} in the {where} integrand")


@dataclass(frozen=True)
class HahnIntegrandState:
    """Integrand of the Hahn exponent at relative weight y."""
    alpha: float
    tau: float
    y: float

    @property
    def P(self) -> float:
        return self.alpha * (1.0 - self.alpha) - self.tau * (1.0 - self.tau) - self.y * (1.0 - 2.0 * self.y)

    @property
    def Q(self) -> float:
        return (self.alpha - self.y) * (1.0 - self.alpha - self.y)

    @property
    def discriminant(self) -> float:
        return self.P ** 2 - 4.0 * self.Q * self.y ** 2

    def value(self) -> float:
        P, Q = self.P, self.Q
        if Q <= 0.0:
            raise NumericalFailure(f"Hahn integrand has Q={Q} at y={self.y}")
        return math.log2((P + _clamped_sqrt(self.discriminant, "Hahn")) / (2.0 * Q))


@dataclass(frozen=True)
class LPPoint:
    """A pair (alpha, tau) admissible for the linear-programming bound at rate R."""
    alpha: float
    tau: float
    rate: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 0.5:
            raise DomainError(f"alpha={self.alpha} lies outside [0, 1/2]")
        if not 0.0 <= self.tau <= self.alpha + EDGE_SLACK:
            raise DomainError(f"tau={self.tau} must satisfy 0 <= tau <= alpha={self.alpha}")
        if self.rate is not None and h(self.tau) > h(self.alpha) - 1.0 + self.rate + LEVEL_SLACK:
            raise DomainError(f"h(tau) exceeds h(alpha) - 1 + R at alpha={self.alpha}, tau={self.tau}, R={self.rate}")

    @classmethod
    def at_equality(cls, alpha: float, R: float) -> "LPPoint":
        """Takes tau on the boundary h(tau) = h(alpha) - 1 + R."""
        level = h(alpha) - 1.0 + R
        if level < -LEVEL_SLACK:
            raise DomainError(f"No tau exists for alpha={alpha} at R={R}")
        return cls(alpha=alpha, tau=h_inv(max(level, 0.0)), rate=R)


def krawtchouk_edge(tau: float) -> float:
    """Right end 1/2 - sqrt(tau(1 - tau)) of the region where the Krawtchouk exponent formula holds."""
    return 0.5 - math.sqrt(tau * (1.0 - tau))


def _krawtchouk_integrand(tau: float):
    b = 1.0 - 2.0 * tau

    def integrand(z: float) -> float:
        root = _clamped_sqrt(b * b - 4.0 * z * (1.0 - z), "Krawtchouk")
        return math.log2((b + root) / (2.0 * (1.0 - z)))

    return integrand


def _check_krawtchouk(tau: float, omega: float) -> None:
    if not 0.0 <= tau <= 0.5:
        raise DomainError(f"tau={tau} lies outside [0, 1/2]")
    if not 0.0 <= omega <= krawtchouk_edge(tau) + EDGE_SLACK:
        raise DomainError(f"omega={omega} lies outside [0, {krawtchouk_edge(tau)}] for tau={tau}")


def krawtchouk_exponent_k(tau: float, omega: float, tol: float = QUAD_TOL) -> float:
    """
    Exponent of the Krawtchouk polynomial K_{tau n}(omega n).

    Args:
        tau (float): Relative degree in [0, 1/2].
        omega (float): Relative argument in [0, 1/2 - sqrt(tau(1 - tau))].
        tol (float): Quadrature tolerance.

    Returns:
        float: k(tau, omega) in bits per symbol.
    """
    _check_krawtchouk(tau, omega)
    omega = min(omega, krawtchouk_edge(tau))
    return h(tau) + integrate(_krawtchouk_integrand(tau), Interval(0.0, omega), tol)


def krawtchouk_exponent_curve(tau: float, omegas: np.ndarray, tol: float = QUAD_TOL) -> np.ndarray:
    """k(tau, omega) on an increasing grid of omegas."""
    omegas = np.asarray(omegas, dtype=float)
    _check_krawtchouk(tau, float(omegas[-1]))
    nodes = np.concatenate(([0.0], np.minimum(omegas, krawtchouk_edge(tau))))
    return h(tau) + cumulative_integrate(_krawtchouk_integrand(tau), nodes, tol)[1:]


def _check_hahn(alpha: float, tau: float, omega: float) -> None:
    LPPoint(alpha=alpha, tau=tau)
    if not 0.0 <= omega <= alpha + EDGE_SLACK:
        raise DomainError(f"omega={omega} must lie in [0, alpha={alpha}]")


def hahn_exponent_q(alpha: float, tau: float, omega: float, tol: float = QUAD_TOL) -> float:
    """
    Exponent of the Hahn polynomial H^{alpha n}_{tau n}(omega n).

    Args:
        alpha (float): Relative weight of the Johnson space, in [0, 1/2].
        tau (float): Relative degree, 0 <= tau <= alpha.
        omega (float): Relative argument, 0 <= omega <= alpha.
        tol (float): Quadrature tolerance.

    Returns:
        float: q(alpha, tau, omega) in bits per symbol.
    """
    _check_hahn(alpha, tau, omega)

    def integrand(y: float) -> float:
        return HahnIntegrandState(alpha=alpha, tau=tau, y=y).value()

    return h(tau) + integrate(integrand, Interval(0.0, min(omega, alpha)), tol)


def hahn_exponent_curve(alpha: float, tau: float, omegas: np.ndarray, tol: float = QUAD_TOL) -> np.ndarray:
    """q(alpha, tau, omega) on an increasing grid of omegas."""
    omegas = np.asarray(omegas, dtype=float)
    _check_hahn(alpha, tau, float(omegas[-1]))

    def integrand(y: float) -> float:
        return HahnIntegrandState(alpha=alpha, tau=tau, y=y).value()

    nodes = np.concatenate(([0.0], np.minimum(omegas, alpha)))
    return h(tau) + cumulative_integrate(integrand, nodes, tol)[1:]
