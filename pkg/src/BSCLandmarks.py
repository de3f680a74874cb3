# Threshold rates of the BSC bounds and the composite upper/lower envelopes
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from BSCBounds import (BoundCurve, bound_theorem5, bound_theorem6, expurgation_Ex, random_coding_E0,
                       sphere_packing, straight_line, tabulate, theorem3_details, theorem5_details,
                       union_bound_low_rate)
from DistanceProfile import binomial_profile, lp_profile
from EntropyCore import EDGE_SLACK, ChannelBSC, pairwise_exponent_A
from Errors import DomainError, WindowEmpty
from LPRegion import R_bar, delta_bar
from Numerics import Interval, find_root
from Settings import COARSE, FINE, LANDMARK_TOL, RATE_SCAN_STEP, Resolution

TIGHT_TOL: float = 1e-3  # Agreement counted as tightness of the expurgation exponent


@dataclass(frozen=True)
class BSCLandmarks:
    p: float
    r_x: float
    r_crit: float
    delta1: float
    r1: float  # R_bar(delta1)
    r0: float | None  # Union bound stops dominating bound_theorem3; inf if it never stops, None if it never dominates
    r0_star: float | None  # Same crossover inside bound_theorem5 with the linear-programming profile

    @property
    def tightness_established(self) -> bool:
        """E equals E_0 on [r1, r_crit] once the union bound reaches r1."""
        return self.r0_star is not None and self.r1 < self.r0_star

    @property
    def tight_window(self) -> tuple[float, float] | None:
        if not self.tightness_established or self.r1 >= self.r_crit:
            return None
        return self.r1, self.r_crit

    @property
    def window_fraction(self) -> float:
        """(r_crit - r1)/(r_crit - r_x): the part of the random-coding segment that is known exactly."""
        return (self.r_crit - self.r1) / (self.r_crit - self.r_x)


def _crossover(coarse: Callable[[float], float], fine: Callable[[float], float], iv: Interval,
               step: float, tol: float, label: str) -> float:
    """
    First rate where a term difference turns nonnegative.

    A cheap difference locates the sign change on a grid of the given step; the precise
    difference then moves the bracket outward until its ends disagree in sign and bisects it.
    """
    rates = np.arange(iv.lo + step, iv.hi - EDGE_SLACK, step)
    signs = np.array([coarse(float(r)) >= 0.0 for r in rates])
    hits = np.flatnonzero(signs)

    if len(hits) == 0:
        raise WindowEmpty(f"{label}: the first term dominates on all of ({iv.lo:.6f}, {iv.hi:.6f})",
                          first_term_dominates=True)
    if hits[0] == 0:
        raise WindowEmpty(f"{label}: the second term dominates from R={rates[0]:.6f} on", first_term_dominates=False)

    lo, hi = float(rates[hits[0] - 1]), float(rates[hits[0]])

    while fine(lo) >= 0.0:
        lo -= step
        if lo <= iv.lo:
            raise WindowEmpty(f"{label}: the second term dominates from the start", first_term_dominates=False)

    while fine(hi) < 0.0:
        hi += step
        if hi >= iv.hi:
            raise WindowEmpty(f"{label}: the first term dominates up to R={iv.hi:.6f}", first_term_dominates=True)

    return find_root(fine, Interval(lo, hi), tol)


def _scan(resolution: Resolution) -> Resolution:
    """The coarse preset, never finer than the caller's."""
    return resolution if resolution.grid <= COARSE.grid else COARSE


def find_R0(ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    """Rate where the overlap term of bound_theorem3 overtakes the union bound, searched on (0, R_bar(delta1))."""

    def difference(res: Resolution) -> Callable[[float], float]:
        def evaluate(R: float) -> float:
            alpha = delta_bar(R, res).argmin_alpha
            return theorem3_details(R, ch, res, alphas=[alpha]).overlap_term - union_bound_low_rate(R, ch, res)
        return evaluate

    hi = R_bar(ch.delta1, resolution)
    return _crossover(difference(_scan(resolution)), difference(resolution), Interval(0.0, hi),
                      RATE_SCAN_STEP, LANDMARK_TOL, "R0")


def find_R0_star(ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    """Rate where the maximum in bound_theorem5 with the linear-programming profile shifts to the overlap term."""

    def difference(res: Resolution) -> Callable[[float], float]:
        def evaluate(R: float) -> float:
            found = theorem5_details(R, lp_profile(R, resolution=res), ch, res)
            return found.overlap_term - found.spectrum_term
        return evaluate

    return _crossover(difference(_scan(resolution)), difference(resolution), Interval(0.0, ch.capacity),
                      RATE_SCAN_STEP, LANDMARK_TOL, "R0*")


def _crossing_or_marker(search: Callable[[ChannelBSC, Resolution], float], ch: ChannelBSC,
                        resolution: Resolution) -> float | None:
    try:
        return search(ch, resolution)
    except WindowEmpty as e:
        return math.inf if e.first_term_dominates else None


@lru_cache(maxsize=64)
def landmarks(ch: ChannelBSC, resolution: Resolution = FINE) -> BSCLandmarks:
    """
    Computes every landmark rate of the channel.

    Args:
        ch (ChannelBSC): The channel.
        resolution (Resolution): Resolution of the underlying bounds.

    Returns:
        BSCLandmarks: r_x, r_crit, delta1, r1 and the two crossover rates.
    """
    return BSCLandmarks(
        p=ch.p,
        r_x=ch.r_x,
        r_crit=ch.r_crit,
        delta1=ch.delta1,
        r1=R_bar(ch.delta1, resolution),
        r0=_crossing_or_marker(find_R0, ch, resolution),
        r0_star=_crossing_or_marker(find_R0_star, ch, resolution),
    )


def expurgation_tight_extent(ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    """
    Largest scanned rate up to which bound_theorem5 with the random-linear profile stays within
    TIGHT_TOL of the expurgation exponent. 0 when it already differs at the first rate.
    """
    extent = 0.0
    for R in np.arange(resolution.curve_step, ch.r_x + EDGE_SLACK, resolution.curve_step):
        R = float(R)
        if abs(bound_theorem5(R, binomial_profile(R), ch, resolution) - expurgation_Ex(R, ch)) > TIGHT_TOL:
            break
        extent = R
    return extent


def lower_envelope(R: float, ch: ChannelBSC) -> float:
    """Best known lower bound: E_x up to r_x, E_0 up to r_crit, E_sp above."""
    if not -EDGE_SLACK <= R <= ch.capacity + EDGE_SLACK:
        raise DomainError(f"lower_envelope needs 0 <= R <= {ch.capacity:.9f}, got {R}")

    if R <= ch.r_x:
        return expurgation_Ex(R, ch)
    if R <= ch.r_crit:
        return random_coding_E0(R, ch)
    return sphere_packing(R, ch)


@lru_cache(maxsize=64)
def straight_line_curve(ch: ChannelBSC, resolution: Resolution = FINE) -> BoundCurve | None:
    """
    Straight-line combination of the union bound and E_sp.

    The union bound is sampled where it is valid, up to min(r1, r0_star). None when it is valid nowhere.
    """
    marks = landmarks(ch, resolution)
    if marks.r0_star is None:
        return None

    hi = min(marks.r1, marks.r0_star, ch.capacity - resolution.curve_step)
    if hi <= resolution.curve_step:
        return None

    rates = np.union1d(np.arange(resolution.curve_step, hi, resolution.curve_step), [hi])
    union = tabulate("union", lambda r: union_bound_low_rate(r, ch, resolution), rates, ch)
    return straight_line(union, ch, resolution.curve_step)


def upper_envelope(R: float, ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    """Best upper bound: min of E_sp, bound_theorem6 and the straight-line bound."""
    if not -EDGE_SLACK <= R <= ch.capacity + EDGE_SLACK:
        raise DomainError(f"upper_envelope needs 0 <= R <= {ch.capacity:.9f}, got {R}")

    if R <= EDGE_SLACK:
        return -pairwise_exponent_A(0.5, ch)  # E(0) is known exactly
    if R >= ch.capacity - EDGE_SLACK:
        return 0.0

    best = min(sphere_packing(R, ch), bound_theorem6(R, ch, resolution))
    curve = straight_line_curve(ch, resolution)
    if curve is not None:
        best = min(best, curve.value_at(R))
    return best
