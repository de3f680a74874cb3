# Tolerances, grid resolutions and budgets used across the toolkit
from dataclasses import dataclass

# Quadrature
QUAD_TOL: float = 1e-9  # Absolute tolerance of integrate()
QUAD_LIMIT: int = 200  # Maximum number of subintervals for the adaptive rule

# One dimensional optimization
OPT_GRID: int = 512  # Coarse scan points of maximize_1d
OPT_MIN_GRID: int = 16  # Smallest grid accepted by maximize_1d
OPT_REFINE_TOL: float = 1e-9  # Final bracket width of the golden-section refinement

# Root finding
ROOT_TOL: float = 1e-12  # Bracket width of find_root
ROOT_MAX_ITER: int = 200  # Bisection steps before giving up on float resolution

DISCRIMINANT_CLAMP: float = 1e-12  # Negative discriminants above -clamp are read as 0
LEVEL_SLACK: float = 1e-9  # h(alpha) - 1 + R this far below 0 reads as 0

# Bound grids
PLANE_STEP: float = 1e-3  # Spacing of the omega/lambda/delta grids
RATE_SCAN_STEP: float = 1e-3  # Spacing of the rate scan behind R0 and R0*
LANDMARK_TOL: float = 1e-5  # Bisection width of the landmark rates
CURVE_STEP: float = 5e-3  # Rate spacing of the low-rate curve fed to the straight line
REFINE_POINTS: int = 33  # Sub-grid size of a local zoom around the best grid cell

# Oracle
ENUMERATION_BUDGET: int = 2 ** 26  # Received words the exact decoder may visit
EXACT_MAX_LENGTH: int = 26  # Block length limit of exact_pe_ml
REVERSE_UNION_MAX_LENGTH: int = 12  # Block length limit of reverse_union_bound
CHUNK_CELLS: int = 2 ** 22  # Distance matrix cells processed per chunk
MC_MIN_TRIALS: int = 10_000  # Smallest Monte-Carlo run accepted
MC_BLOCK: int = 1 << 14  # Trials per independently seeded block
RNG_ALGORITHM: str = "Philox"  # Bit generator recorded with every estimate


@dataclass(frozen=True)
class Resolution:
    """Grid resolution of the nested bound optimizations."""
    grid: int = OPT_GRID  # Scan points of every maximize_1d call
    refine_tol: float = OPT_REFINE_TOL  # Golden-section bracket width
    plane_step: float = PLANE_STEP  # omega/lambda/delta grid spacing
    alpha_points: int = 4  # Extra alpha candidates besides the delta_bar minimizer
    refine: bool = True  # Zoom into the best grid cell after the scan
    curve_step: float = CURVE_STEP  # Rate spacing of the straight-line input curve


FINE: Resolution = Resolution()

COARSE: Resolution = Resolution(
    grid=48,
    refine_tol=1e-6,
    plane_step=1e-2,
    alpha_points=0,
    refine=False,
    curve_step=1e-2,
)

RESOLUTIONS: dict[str, Resolution] = {
    "fine": FINE,
    "coarse": COARSE,
}
