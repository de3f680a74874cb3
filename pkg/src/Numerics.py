# Numerical primitives shared by every bound module: quadrature, 1-D optimization and bisection
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from Errors import BracketError, DomainError, NumericalFailure
from Settings import OPT_GRID, OPT_MIN_GRID, OPT_REFINE_TOL, QUAD_LIMIT, QUAD_TOL, ROOT_MAX_ITER, ROOT_TOL

INV_PHI: float = (math.sqrt(5.0) - 1.0) / 2.0  # 1/golden ratio
INV_PHI_SQ: float = (3.0 - math.sqrt(5.0)) / 2.0  # 1/golden ratio squared


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"Interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise DomainError(f"Interval lower end {self.lo} exceeds upper end {self.hi}")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class OptimResult:
    """Best point of a 1-D search: `arg` is the argmax (or argmin) inside the searched interval."""
    arg: float
    value: float
    evaluations: int


def integrate(f: Callable[[float], float], iv: Interval, tol: float = QUAD_TOL, limit: int = QUAD_LIMIT) -> float:
    """
    Integrates f over iv with the adaptive Gauss-Kronrod rule of QUADPACK.

    Args:
        f (Callable[[float], float]): Integrand, continuous on iv (square-root endpoint singularities are fine).
        iv (Interval): Integration range.
        tol (float): Absolute error target.
        limit (int): Maximum number of subintervals.

    Returns:
        float: The integral.
    """
    if tol <= 0.0:
        raise DomainError(f"Quadrature tolerance must be positive, got {tol}")

    if iv.width == 0.0:
        return 0.0  # Empty range

    result = quad(f, iv.lo, iv.hi, epsabs=tol, epsrel=0.0, limit=limit, full_output=1)
    value, abserr = result[0], result[1]

    # A fourth element is QUADPACK's message for ier > 0
    if len(result) > 3 and not abserr <= 10.0 * tol:
        raise NumericalFailure(f"Quadrature on [{iv.lo}, {iv.hi}] did not converge: {result[3]}")

    if not math.isfinite(value):
        raise NumericalFailure(f"Quadrature on [{iv.lo}, {iv.hi}] produced {value}")

    return value


def cumulative_integrate(f: Callable[[float], float], nodes: np.ndarray, tol: float = QUAD_TOL) -> np.ndarray:
    """Running integrals of f from nodes[0] to every node; each piece gets an equal share of tol."""
    nodes = np.asarray(nodes, dtype=float)
    out = np.zeros(len(nodes))
    if len(nodes) < 2:
        return out

    share = tol / (len(nodes) - 1)
    total = 0.0
    for i in range(1, len(nodes)):
        total += integrate(f, Interval(float(nodes[i - 1]), float(nodes[i])), share)
        out[i] = total

    return out


def _golden_refine(f: Callable[[float], float], lo: float, hi: float, tol: float,
                   best_x: float, best_f: float) -> tuple[float, float, int]:
    """Golden-section maximization on [lo, hi]; keeps the incumbent unless strictly beaten."""
    width = hi - lo
    if width <= tol:
        return best_x, best_f, 0

    steps = int(math.ceil(math.log(tol / width) / math.log(INV_PHI)))

    c = lo + INV_PHI_SQ * width
    d = lo + INV_PHI * width
    fc = _finite_or_floor(f(c))
    fd = _finite_or_floor(f(d))
    evaluations = 2

    for x, fx in ((c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = x, fx

    for _ in range(steps):
        width *= INV_PHI
        if fc >= fd:
            # Maximum lies in [lo, d]
            hi = d
            d, fd = c, fc
            c = lo + INV_PHI_SQ * width
            fc = _finite_or_floor(f(c))
            x, fx = c, fc
        else:
            # Maximum lies in [c, hi]
            lo = c
            c, fc = d, fd
            d = lo + INV_PHI * width
            fd = _finite_or_floor(f(d))
            x, fx = d, fd
        evaluations += 1

        if fx > best_f:
            best_x, best_f = x, fx

    return best_x, best_f, evaluations


def _finite_or_floor(value: float) -> float:
    """NaN is read as the minus-infinity marker so it never wins a comparison."""
    return -math.inf if math.isnan(value) else value


def maximize_sampled(f: Callable[[float], float], xs: np.ndarray, values: np.ndarray,
                     refine_tol: float = OPT_REFINE_TOL, refine: bool = True) -> OptimResult:
    """
    Refines the best sample of a precomputed grid with a golden-section search on its neighbouring cells.

    Args:
        f (Callable[[float], float]): Objective, used only for the refinement.
        xs (np.ndarray): Increasing grid.
        values (np.ndarray): f sampled on xs.
        refine_tol (float): Final bracket width.
        refine (bool): False returns the best grid point unchanged.

    Returns:
        OptimResult: Best point; ties go to the smaller argument.
    """
    values = np.where(np.isnan(values), -np.inf, values)
    k = int(np.argmax(values))  # First occurrence, so ties go to the smaller argument
    best_x, best_f = float(xs[k]), float(values[k])
    evaluations = len(xs)

    if not refine or not math.isfinite(best_f) or len(xs) < 2:
        return OptimResult(arg=best_x, value=best_f, evaluations=evaluations)

    lo = float(xs[max(k - 1, 0)])
    hi = float(xs[min(k + 1, len(xs) - 1)])
    best_x, best_f, extra = _golden_refine(f, lo, hi, refine_tol, best_x, best_f)

    return OptimResult(arg=best_x, value=best_f, evaluations=evaluations + extra)


def maximize_1d(f: Callable[[float], float], iv: Interval, grid: int = OPT_GRID,
                refine_tol: float = OPT_REFINE_TOL) -> OptimResult:
    """
    Maximizes f on iv: coarse grid scan, then golden-section refinement around the best grid cell.

    Args:
        f (Callable[[float], float]): Objective; NaN and -inf are treated as infeasible.
        iv (Interval): Search range.
        grid (int): Number of scan points, at least 16.
        refine_tol (float): Final bracket width.

    Returns:
        OptimResult: argmax, maximum and the number of evaluations.
    """
    if grid < OPT_MIN_GRID:
        raise DomainError(f"maximize_1d needs at least {OPT_MIN_GRID} grid points, got {grid}")

    if iv.width == 0.0:
        return OptimResult(arg=iv.lo, value=_finite_or_floor(f(iv.lo)), evaluations=1)

    xs = np.linspace(iv.lo, iv.hi, grid)
    values = np.array([f(float(x)) for x in xs], dtype=float)

    return maximize_sampled(f, xs, values, refine_tol)


def minimize_1d(f: Callable[[float], float], iv: Interval, grid: int = OPT_GRID,
                refine_tol: float = OPT_REFINE_TOL) -> OptimResult:
    """Minimizes f on iv by maximizing -f; NaN is treated as +inf."""
    def negated(x: float) -> float:
        value = f(x)
        return -math.inf if math.isnan(value) else -value

    found = maximize_1d(negated, iv, grid, refine_tol)
    return OptimResult(arg=found.arg, value=-found.value, evaluations=found.evaluations)


def find_root(f: Callable[[float], float], iv: Interval, tol: float = ROOT_TOL) -> float:
    """
    Bisection on a sign change.

    Args:
        f (Callable[[float], float]): Continuous function with f(lo)*f(hi) <= 0.
        iv (Interval): Bracket.
        tol (float): Final bracket width.

    Returns:
        float: Midpoint of the final bracket (or an endpoint where f vanishes).
    """
    lo, hi = iv.lo, iv.hi
    f_lo, f_hi = f(lo), f(hi)

    if math.isnan(f_lo) or math.isnan(f_hi):
        raise NumericalFailure(f"Root bracket [{lo}, {hi}] evaluates to NaN")

    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi

    if (f_lo > 0.0) == (f_hi > 0.0):
        raise BracketError(f"f({lo})={f_lo} and f({hi})={f_hi} have the same sign")

    for _ in range(ROOT_MAX_ITER):
        if hi - lo <= tol:
            break

        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid

        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid

    return 0.5 * (lo + hi)


def bisect_array(g: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray,
                 iterations: int = 60) -> np.ndarray:
    """
    Elementwise bisection for a decreasing function: returns the point where g changes sign
    (or the endpoint when it does not change sign inside [lo, hi]).
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)

    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        positive = g(mid) > 0.0  # NaN counts as non-positive
        lo = np.where(positive, mid, lo)
        hi = np.where(positive, hi, mid)

    return 0.5 * (lo + hi)
