# Gaussian channel: random coding exponent, union bound over spherical codes and the tight window (nats)
import math
from dataclasses import dataclass

from scipy.special import xlogy

from EntropyCore import EDGE_SLACK, LN2
from Errors import DomainError, NumericalFailure, WindowEmpty
from Numerics import Interval, find_root
from Settings import ROOT_TOL

THETA_MIN: float = 1e-6  # Smallest angle psi is evaluated at
R_STAR_LO: float = 1e-3  # Left end of the R* search window


@dataclass(frozen=True)
class ChannelAWGN:
    """Gaussian channel with signal-to-noise ratio a."""
    a: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise DomainError(f"Signal-to-noise ratio must be positive, got a={self.a}")

    @property
    def r_x(self) -> float:
        return 0.5 * math.log(0.5 + 0.5 * math.sqrt(1.0 + self.a ** 2 / 4.0))

    @property
    def theta_x(self) -> float:
        return math.acos(math.sqrt(1.0 - math.exp(-2.0 * self.r_x)))

    @property
    def r_crit(self) -> float:
        return 0.5 * math.log(0.5 + self.a / 4.0 + 0.5 * math.sqrt(1.0 + self.a ** 2 / 4.0))


@dataclass(frozen=True)
class AWGNLandmarks:
    a: float
    r_x: float
    theta_x: float
    r_crit: float
    r1: float  # psi(theta_x), where E_0 meets the union bound
    r_star: float | None  # Largest rate the union bound is known to hold at; None if the window has no root
    applicable: bool  # r1 <= r_star: E = E_0 on [r1, r_crit]

    @property
    def tight_window(self) -> tuple[float, float] | None:
        return (self.r1, self.r_crit) if self.applicable and self.r1 <= self.r_crit else None


def nats_to_bits(x: float) -> float:
    return x / LN2


def bits_to_nats(x: float) -> float:
    return x * LN2


def psi(theta: float) -> float:
    """
    Rate of the Kabatiansky-Levenshtein bound on spherical codes with minimum angle theta.

    psi(x) = -((1 - sin x)/(2 sin x)) ln((1 - sin x)/(1 + sin x)) - ln(2 sin x/(1 + sin x))
    """
    if not THETA_MIN <= theta <= math.pi / 2.0 + EDGE_SLACK:
        raise DomainError(f"psi needs {THETA_MIN} <= theta <= pi/2, got {theta}")

    s = min(math.sin(theta), 1.0)
    first = -float(xlogy(1.0 - s, (1.0 - s) / (1.0 + s))) / (2.0 * s)  # 0 at s = 1
    return first - math.log(2.0 * s / (1.0 + s))


def theta_bar(R: float) -> float:
    """Angle with psi(theta) = R."""
    if R <= 0.0:
        raise DomainError(f"theta_bar needs R > 0, got {R}")

    iv = Interval(THETA_MIN, math.pi / 2.0)
    if R > psi(iv.lo):
        raise DomainError(f"R={R} exceeds psi({THETA_MIN}) = {psi(iv.lo)}")

    return find_root(lambda t: psi(t) - R, iv, ROOT_TOL)


def E0_awgn(R: float, ch: ChannelAWGN) -> float:
    """E_0(R, a) = (a/4)(1 - cos theta_x) + R_x - R on [0, R_crit]."""
    if not -EDGE_SLACK <= R <= ch.r_crit + EDGE_SLACK:
        raise DomainError(f"E0_awgn needs 0 <= R <= {ch.r_crit:.9f}, got {R}")
    return ch.a / 4.0 * (1.0 - math.cos(ch.theta_x)) + ch.r_x - R


def EU_awgn(R: float, ch: ChannelAWGN) -> float:
    """E_U(R, a) = (a/4)(1 - cos theta_bar) - ln sin theta_bar - R."""
    t = theta_bar(R)
    return ch.a / 4.0 * (1.0 - math.cos(t)) - math.log(math.sin(t)) - R


def _validity_margin(R: float, ch: ChannelAWGN) -> float:
    """R + ln sin theta_bar - (a/8)(1 - cos theta_bar); the union bound holds where this is <= 0."""
    t = theta_bar(R)
    return R + math.log(math.sin(t)) - ch.a / 8.0 * (1.0 - math.cos(t))


def r_star(ch: ChannelAWGN) -> float:
    """
    Root of R + ln sin theta_bar(R) = (a/8)(1 - cos theta_bar(R)) on (R_STAR_LO, r_crit].

    Raises:
        WindowEmpty: When the condition does not change sign inside the window.
    """
    iv = Interval(R_STAR_LO, ch.r_crit)
    lo, hi = _validity_margin(iv.lo, ch), _validity_margin(iv.hi, ch)

    if (lo > 0.0) == (hi > 0.0):
        raise WindowEmpty(f"R* has no root in ({iv.lo}, {iv.hi:.6f}] for a={ch.a}", first_term_dominates=hi <= 0.0)

    try:
        return find_root(lambda R: _validity_margin(R, ch), iv, ROOT_TOL)
    except NumericalFailure as e:
        raise WindowEmpty(f"R* search failed for a={ch.a}: {e}") from e


def landmarks_awgn(ch: ChannelAWGN) -> AWGNLandmarks:
    """
    Assembles the landmark rates and decides whether the union bound reaches r1.

    Args:
        ch (ChannelAWGN): The channel.

    Returns:
        AWGNLandmarks: Rates in nats; applicable is read from the live r1 <= r_star comparison.
    """
    r1 = psi(ch.theta_x)

    try:
        star = r_star(ch)
        applicable = r1 <= star
    except WindowEmpty:
        star = None
        applicable = _validity_margin(r1, ch) <= 0.0

    return AWGNLandmarks(a=ch.a, r_x=ch.r_x, theta_x=ch.theta_x, r_crit=ch.r_crit, r1=r1,
                         r_star=star, applicable=applicable)
