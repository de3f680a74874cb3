# Error-exponent bounds for the binary symmetric channel (base-2 throughout)
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from DistanceProfile import DistanceProfile, lp_profile, mu_curve, mu_exponent
from EntropyCore import EDGE_SLACK, ChannelBSC, divergence, gv_distance, h, pairwise_exponent_A
from Errors import DomainError, NumericalFailure
from LPRegion import G, delta_bar, lp_alpha_range
from Numerics import maximize_sampled
from OverlapExponent import optimal_eta, overlap_plane
from PolyExponents import LPPoint
from Settings import FINE, RATE_SCAN_STEP, REFINE_POINTS, Resolution

__all__ = [
    "ExponentQuery", "BoundDetails", "BoundCurve",
    "sphere_packing", "random_coding_E0", "expurgation_Ex", "mu_exponent", "union_bound_low_rate",
    "theorem3_details", "bound_theorem3", "theorem5_details", "bound_theorem5",
    "theorem6_details", "bound_theorem6", "tabulate", "straight_line",
]


@dataclass(frozen=True)
class ExponentQuery:
    """Optimizing variables of a bound evaluation; None where a variable does not enter."""
    R: float
    omega: float | None = None
    lam: float | None = None
    delta: float | None = None
    alpha: float | None = None
    tau: float | None = None
    eta: float | None = None  # Overlap variable attaining B(omega, lambda)

    def __post_init__(self) -> None:
        chain = [x for x in (0.0, self.delta, self.lam, self.omega, 1.0) if x is not None]
        if any(a > b + 1e-9 for a, b in zip(chain, chain[1:])):
            raise DomainError(f"Query violates 0 <= delta <= lambda <= omega <= 1: {self}")

    def with_eta(self, ch: ChannelBSC, resolution: Resolution) -> "ExponentQuery":
        """Copy with eta set to the maximizer behind B(omega, lambda)."""
        if self.omega is None or self.lam is None:
            return self
        return replace(self, eta=optimal_eta(self.omega, self.lam, ch, resolution))


@dataclass(frozen=True)
class BoundDetails:
    value: float  # The bound
    query: ExponentQuery  # Where it is attained
    term: str  # Which part decides: "distance", "spectrum" or "overlap"
    spectrum_term: float  # Value carried by the distance-distribution term alone
    overlap_term: float  # Value carried by the overlap term alone


@dataclass(frozen=True)
class BoundCurve:
    name: str
    channel: ChannelBSC
    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        rates = [r for r, _ in self.samples]
        if any(b <= a for a, b in zip(rates, rates[1:])):
            raise DomainError(f"Curve '{self.name}' rates must be strictly increasing")
        for r, e in self.samples:
            if not math.isfinite(e) or e < -1e-9:
                raise NumericalFailure(f"Curve '{self.name}' has exponent {e} at R={r}")

    @property
    def rates(self) -> np.ndarray:
        return np.array([r for r, _ in self.samples], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([e for _, e in self.samples], dtype=float)

    def value_at(self, R: float) -> float:
        """Linear interpolation between samples; +inf outside the sampled range."""
        rates = self.rates
        if len(rates) == 0 or not rates[0] - EDGE_SLACK <= R <= rates[-1] + EDGE_SLACK:
            return math.inf
        return float(np.interp(R, rates, self.values))


def _check_rate(R: float, hi: float, name: str) -> float:
    if not -EDGE_SLACK <= R <= hi + EDGE_SLACK:
        raise DomainError(f"{name} is defined for 0 <= R <= {hi:.9f}, got R={R}")
    return min(max(R, 0.0), hi)  # Clamp the slack away


def sphere_packing(R: float, ch: ChannelBSC) -> float:
    """E_sp(R) = D(delta_GV(R) || p)."""
    R = _check_rate(R, ch.capacity, "sphere_packing")
    return divergence(gv_distance(R), ch.p)


def random_coding_E0(R: float, ch: ChannelBSC) -> float:
    """E_0(R) = D(rho || p) + R_crit - R on [0, R_crit]."""
    R = _check_rate(R, ch.r_crit, "random_coding_E0")
    return divergence(ch.rho, ch.p) + ch.r_crit - R


def expurgation_Ex(R: float, ch: ChannelBSC) -> float:
    """E_x(R) = -A(delta_GV(R)) on [0, R_x]."""
    R = _check_rate(R, ch.r_x, "expurgation_Ex")
    return -pairwise_exponent_A(gv_distance(R), ch)


def union_bound_low_rate(R: float, ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    """-A(delta_bar) - R + 1 - h(delta_bar); the caller checks R against R0 or R0*."""
    d = delta_bar(R, resolution).delta_bar  # Minimum distance guaranteed by the LP bound
    return -pairwise_exponent_A(d, ch) - R + 1.0 - h(d)


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Uniform grid from lo to hi (both included) with spacing at most step."""
    count = max(int(math.ceil((hi - lo) / step - 1e-9)) + 1, 2)  # At least both ends
    return np.linspace(lo, hi, count)


def _zoom(nodes: np.ndarray, k: int) -> np.ndarray:
    """Fine sub-grid over the cells next to nodes[k]."""
    return np.linspace(nodes[max(k - 1, 0)], nodes[min(k + 1, len(nodes) - 1)], REFINE_POINTS)


def _alpha_candidates(R: float, resolution: Resolution) -> list[float]:
    """The delta_bar minimizer first, then an even spread over the feasible alpha range."""
    best = delta_bar(R, resolution).argmin_alpha
    candidates = [best]
    if resolution.alpha_points > 0:
        span = lp_alpha_range(R)
        for alpha in np.linspace(span.lo, span.hi, resolution.alpha_points):
            if abs(alpha - best) > 1e-9:
                candidates.append(float(alpha))
    return candidates


def _theorem3_rows(deltas: np.ndarray, omegas: np.ndarray, spectrum: np.ndarray, suffix: np.ndarray,
                   ch: ChannelBSC) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """For each delta: the cap -A(delta), the spectrum term, the overlap term and its argmax column."""
    start = np.minimum(np.searchsorted(omegas, deltas - EDGE_SLACK, side="left"), len(omegas) - 1)
    m1 = suffix[start]  # Best spectrum term over omega >= delta

    plane = overlap_plane(omegas[None, :], deltas[:, None], ch) - ch.log2_u * omegas[None, :]
    plane = np.where(omegas[None, :] >= deltas[:, None] - EDGE_SLACK, plane, -np.inf)
    m2 = plane.max(axis=1)
    cap = -ch.log2_u * deltas  # -A(delta)

    return cap, m1, m2, plane.argmax(axis=1)


def _theorem3_at_alpha(R: float, alpha: float, ch: ChannelBSC, resolution: Resolution) -> BoundDetails:
    point = LPPoint.at_equality(alpha, R)
    g = G(point.alpha, point.tau)  # Support end of the profile
    top = min(delta_bar(R, resolution).delta_bar, g)

    omegas = _grid(0.0, g, resolution.plane_step)
    spectrum = -mu_curve(R, point.alpha, omegas) - ch.log2_u * omegas
    suffix = np.maximum.accumulate(spectrum[::-1])[::-1]  # max over omega' >= omega

    deltas = _grid(0.0, top, resolution.plane_step)
    cap, m1, m2, cols = _theorem3_rows(deltas, omegas, spectrum, suffix, ch)

    if resolution.refine:
        k = int(np.argmax(np.minimum(cap, np.maximum(m1, m2))))
        extra = _zoom(deltas, k)
        cap2, m12, m22, cols2 = _theorem3_rows(extra, omegas, spectrum, suffix, ch)
        deltas = np.concatenate((deltas, extra))
        cap, m1, m2 = np.concatenate((cap, cap2)), np.concatenate((m1, m12)), np.concatenate((m2, m22))
        cols = np.concatenate((cols, cols2))

    inner = np.minimum(cap, np.maximum(m1, m2))  # Inner min over the three terms, per delta
    i = int(np.argmax(inner))

    if cap[i] <= max(m1[i], m2[i]):
        term = "distance"
    else:
        term = "spectrum" if m1[i] >= m2[i] else "overlap"

    if m2[i] > m1[i]:
        omega = float(omegas[cols[i]])
    else:
        start = int(np.searchsorted(omegas, deltas[i] - EDGE_SLACK, side="left"))
        omega = float(omegas[start + int(np.argmax(spectrum[start:]))])

    return BoundDetails(
        value=float(inner[i]),
        query=ExponentQuery(R=R, omega=max(omega, float(deltas[i])), lam=float(deltas[i]), delta=float(deltas[i]),
                            alpha=point.alpha, tau=point.tau).with_eta(ch, resolution),
        term=term,
        spectrum_term=float(np.max(np.minimum(cap, m1))),
        overlap_term=float(np.max(np.minimum(cap, m2))),
    )


def theorem3_details(R: float, ch: ChannelBSC, resolution: Resolution = FINE,
                     alphas: list[float] | None = None) -> BoundDetails:
    """
    The pre-existing bound: min over alpha of max over delta <= delta_bar and delta <= omega <= G(alpha, tau) of
    min{-A(delta), max(-mu(R, alpha, omega) - A(omega), B(omega, delta) - A(omega))}.

    Args:
        R (float): Rate strictly between 0 and capacity.
        ch (ChannelBSC): The channel.
        resolution (Resolution): Grid spacing and refinement.
        alphas (list[float] | None): alpha candidates; defaults to the delta_bar minimizer plus an even spread.

    Returns:
        BoundDetails: The bound with its optimizing variables.
    """
    if not 0.0 < R < ch.capacity:
        raise DomainError(f"bound_theorem3 needs 0 < R < {ch.capacity:.9f}, got {R}")

    candidates = alphas if alphas is not None else _alpha_candidates(R, resolution)
    results = [_theorem3_at_alpha(R, alpha, ch, resolution) for alpha in candidates]
    return min(results, key=lambda d: d.value)


def bound_theorem3(R: float, ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    return theorem3_details(R, ch, resolution).value


def _overlap_rows(omegas: np.ndarray, lams: np.ndarray, ch: ChannelBSC) -> np.ndarray:
    """B(omega, lambda) - A(lambda) with lambda restricted to lambda <= omega."""
    plane = overlap_plane(omegas[:, None], lams[None, :], ch) - ch.log2_u * lams[None, :]
    return np.where(lams[None, :] <= omegas[:, None] + EDGE_SLACK, plane, -np.inf)


def theorem5_details(R: float, profile: DistanceProfile, ch: ChannelBSC,
                     resolution: Resolution = FINE) -> BoundDetails:
    """
    The bound for a code family with distance profile beta:
    min over delta <= omega of max over delta <= lambda <= omega of max(-beta(omega) - A(omega), B(omega, lambda) - A(lambda)).

    An existential profile only promises one good omega in its support, so the omega operator becomes a max.

    Args:
        R (float): Rate, used for bookkeeping in the returned query.
        profile (DistanceProfile): beta and its support.
        ch (ChannelBSC): The channel.
        resolution (Resolution): Grid spacing and refinement.

    Returns:
        BoundDetails: The bound with its optimizing variables.
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"bound_theorem5 needs 0 < R < 1, got {R}")

    delta = profile.delta_min
    omegas = _grid(delta, profile.support_hi, resolution.plane_step)
    lams = omegas  # lambda shares the omega grid
    spectrum = -profile.sample(omegas) - ch.log2_u * omegas
    plane = _overlap_rows(omegas, lams, ch)
    overlap = plane.max(axis=1)  # max over lambda <= omega

    if profile.existential:
        return _existential_bound(R, profile, ch, resolution, omegas, spectrum, plane)

    values = np.maximum(spectrum, overlap)
    i = int(np.argmin(values))  # min over omega
    best, best_omega, best_lam = float(values[i]), float(omegas[i]), float(lams[int(np.argmax(plane[i]))])

    if resolution.refine:
        fine_omegas = _zoom(omegas, i)
        fine_lams = np.union1d(lams, _zoom(lams, int(np.argmax(plane[i]))))
        fine_plane = _overlap_rows(fine_omegas, fine_lams, ch)
        fine_values = np.maximum(-profile.sample(fine_omegas) - ch.log2_u * fine_omegas, fine_plane.max(axis=1))
        j = int(np.argmin(fine_values))
        if fine_values[j] < best:
            best, best_omega = float(fine_values[j]), float(fine_omegas[j])
            best_lam = float(fine_lams[int(np.argmax(fine_plane[j]))])

    s1 = -profile(best_omega) - ch.log2_u * best_omega  # Terms at the optimum, recomputed pointwise
    s2 = best if s1 < best else float(np.max(_overlap_rows(np.array([best_omega]), lams, ch)))

    return BoundDetails(
        value=best,
        query=ExponentQuery(R=R, omega=best_omega, lam=min(max(best_lam, delta), best_omega),
                            delta=delta).with_eta(ch, resolution),
        term="spectrum" if s1 >= s2 else "overlap",
        spectrum_term=s1,
        overlap_term=s2,
    )


def _existential_bound(R: float, profile: DistanceProfile, ch: ChannelBSC, resolution: Resolution,
                       omegas: np.ndarray, spectrum: np.ndarray, plane: np.ndarray) -> BoundDetails:
    """max(max_omega -beta(omega) - A(omega), max_{lambda <= omega} B(omega, lambda) - A(lambda))."""
    first = maximize_sampled(lambda w: -profile(w) - ch.log2_u * w, omegas, spectrum,
                             resolution.refine_tol, resolution.refine)

    i, j = np.unravel_index(int(np.argmax(plane)), plane.shape)  # Joint max over (omega, lambda)
    second, s_omega, s_lam = float(plane[i, j]), float(omegas[i]), float(omegas[j])

    if resolution.refine:
        fine_omegas, fine_lams = _zoom(omegas, int(i)), _zoom(omegas, int(j))
        fine_plane = _overlap_rows(fine_omegas, fine_lams, ch)
        fi, fj = np.unravel_index(int(np.argmax(fine_plane)), fine_plane.shape)
        if fine_plane[fi, fj] > second:
            second, s_omega, s_lam = float(fine_plane[fi, fj]), float(fine_omegas[fi]), float(fine_lams[fj])

    if first.value >= second:
        query = ExponentQuery(R=R, omega=first.arg, delta=profile.delta_min)
        term = "spectrum"
    else:
        query = ExponentQuery(R=R, omega=s_omega, lam=min(s_lam, s_omega),
                              delta=profile.delta_min).with_eta(ch, resolution)
        term = "overlap"

    return BoundDetails(value=max(first.value, second), query=query, term=term,
                        spectrum_term=first.value, overlap_term=second)


def bound_theorem5(R: float, profile: DistanceProfile, ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    return theorem5_details(R, profile, ch, resolution).value


def theorem6_details(R: float, ch: ChannelBSC, resolution: Resolution = FINE,
                     alphas: list[float] | None = None) -> BoundDetails:
    """bound_theorem5 with the linear-programming profile, minimized over the alpha candidates."""
    if not 0.0 < R < ch.capacity:
        raise DomainError(f"bound_theorem6 needs 0 < R < {ch.capacity:.9f}, got {R}")

    candidates = alphas if alphas is not None else _alpha_candidates(R, resolution)
    results = []
    for alpha in candidates:
        found = theorem5_details(R, lp_profile(R, alpha, resolution), ch, resolution)
        point = LPPoint.at_equality(alpha, R)
        query = replace(found.query, alpha=point.alpha, tau=point.tau)
        results.append(BoundDetails(found.value, query, found.term, found.spectrum_term, found.overlap_term))

    return min(results, key=lambda d: d.value)


def bound_theorem6(R: float, ch: ChannelBSC, resolution: Resolution = FINE) -> float:
    return theorem6_details(R, ch, resolution).value


def tabulate(name: str, fn: Callable[[float], float], rates: np.ndarray, ch: ChannelBSC) -> BoundCurve:
    """Samples fn on a rate grid into a named curve."""
    samples = tuple((float(r), float(fn(float(r)))) for r in rates)
    return BoundCurve(name=name, channel=ch, samples=samples)


def straight_line(low_curve: BoundCurve, ch: ChannelBSC, rate_step: float = RATE_SCAN_STEP) -> BoundCurve:
    """
    Combines a valid upper bound with the sphere-packing exponent by the straight-line principle.

    Every chord from a point of low_curve to a point of E_sp at a larger rate is a valid upper
    bound between its ends; the result is the pointwise minimum of low_curve, E_sp and all chords.

    Args:
        low_curve (BoundCurve): Upper bound sampled below capacity.
        ch (ChannelBSC): The channel.
        rate_step (float): Spacing of the sphere-packing samples.

    Returns:
        BoundCurve: The combined envelope on the union of both rate sets.
    """
    low_rates, low_values = low_curve.rates, low_curve.values
    if len(low_rates) == 0 or low_rates[-1] >= ch.capacity:
        raise NumericalFailure(f"Straight line needs a curve below capacity, '{low_curve.name}' is not")

    sp_rates = np.union1d(np.arange(low_rates[0], ch.capacity, rate_step), [ch.r_crit, ch.capacity])
    sp_rates = sp_rates[(sp_rates >= low_rates[0]) & (sp_rates <= ch.capacity)]
    sp_values = np.array([sphere_packing(float(r), ch) for r in sp_rates])  # Right ends of the chords

    rates = np.union1d(low_rates, sp_rates)
    best = np.full(len(rates), np.inf)
    covered = rates <= low_rates[-1]  # Low curve interpolated wherever it was sampled
    best[covered] = np.interp(rates[covered], low_rates, low_values)
    at_sp = np.searchsorted(rates, sp_rates)
    best[at_sp] = np.minimum(best[at_sp], sp_values)

    for k, r in enumerate(rates):
        left = low_rates <= r
        right = sp_rates > r
        if not left.any() or not right.any():
            continue

        ra, ea = low_rates[left][:, None], low_values[left][:, None]
        rb, eb = sp_rates[right][None, :], sp_values[right][None, :]
        chords = ea + (eb - ea) * (r - ra) / (rb - ra)  # Every (low, sp) pair straddling r
        best[k] = min(best[k], float(chords.min()))

    if not np.all(np.isfinite(best)):
        raise NumericalFailure(f"Straight line through '{low_curve.name}' left rates uncovered")

    samples = tuple((float(r), float(e)) for r, e in zip(rates, best))
    return BoundCurve(name=f"straightline({low_curve.name})", channel=ch, samples=samples)
