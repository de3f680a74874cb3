# Binary entropy, divergence and the BSC constants every bound is built from (base-2 logs)
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import entr, rel_entr

from Errors import DomainError
from Numerics import Interval, find_root
from Settings import ROOT_TOL

LN2: float = math.log(2.0)
EDGE_SLACK: float = 1e-12  # Rounding allowance at the ends of [0, 1]


def _unit(x: float, name: str = "x") -> float:
    """Checks x is in [0, 1], snapping values within rounding of an end."""
    if -EDGE_SLACK <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + EDGE_SLACK:
        return 1.0
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name}={x} lies outside [0, 1]")
    return x


def h(x: float) -> float:
    """Binary entropy in bits, with 0*log(0) = 0."""
    x = _unit(x)
    return float((entr(x) + entr(1.0 - x)) / LN2)


def entropy_array(x: np.ndarray) -> np.ndarray:
    """Vectorized binary entropy; entries outside [0, 1] give NaN."""
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore"):
        out = (entr(x) + entr(1.0 - x)) / LN2
    return np.where((x >= 0.0) & (x <= 1.0), out, np.nan)


def h_inv(y: float) -> float:
    """
    Inverse of the binary entropy on the branch [0, 1/2].

    Args:
        y (float): Entropy value in [0, 1].

    Returns:
        float: The unique x in [0, 1/2] with h(x) = y.
    """
    y = _unit(y, "y")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5

    return find_root(lambda x: h(x) - y, Interval(0.0, 0.5), ROOT_TOL)


def divergence(x: float, y: float) -> float:
    """Binary information divergence D(x||y) in bits."""
    x = _unit(x)
    if not 0.0 < y < 1.0:
        raise DomainError(f"divergence needs 0 < y < 1, got y={y}")
    return float((rel_entr(x, y) + rel_entr(1.0 - x, 1.0 - y)) / LN2)


def gv_distance(R: float) -> float:
    """Relative Gilbert-Varshamov distance h^-1(1 - R)."""
    R = _unit(R, "R")
    return h_inv(1.0 - R)


def phi(x: float) -> float:
    x = _unit(x)
    return h(0.5 - math.sqrt(x * (1.0 - x)))


@dataclass(frozen=True)
class ChannelBSC:
    """Binary symmetric channel with crossover probability p."""
    p: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 0.5:
            raise DomainError(f"BSC crossover probability must satisfy 0 < p < 1/2, got {self.p}")

    @property
    def u(self) -> float:
        return 2.0 * math.sqrt(self.p * (1.0 - self.p))  # Bhattacharyya parameter

    @property
    def log2_u(self) -> float:
        return math.log2(self.u)

    @property
    def rho(self) -> float:
        sp, sq = math.sqrt(self.p), math.sqrt(1.0 - self.p)
        return sp / (sp + sq)

    @property
    def delta1(self) -> float:
        return 2.0 * self.rho * (1.0 - self.rho)

    @property
    def r_crit(self) -> float:
        return 1.0 - h(self.rho)

    @property
    def r_x(self) -> float:
        return 1.0 - h(self.delta1)

    @property
    def capacity(self) -> float:
        return 1.0 - h(self.p)


def pairwise_exponent_A(omega: float, ch: ChannelBSC) -> float:
    """Exponent of the pairwise error probability at relative distance omega: omega*log2(u) <= 0."""
    omega = _unit(omega, "omega")
    return omega * ch.log2_u
