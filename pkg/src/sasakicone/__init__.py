"""Exact extremal and CSC Sasaki geometry of joins over Riemann surfaces."""

from .csc import CscRay, CscUniquenessError, Regularity, csc_cubic, csc_ray
from .curvature import (
    PiLinear,
    ScalarReport,
    Type3,
    null_scalar_solutions,
    sasaki_scalar,
    scalar_coefficients,
    transverse_homothety,
)
from .exact import (
    IsolatingInterval,
    PolyQ,
    Positivity,
    isolate_real_roots,
    positive_on_open_interval,
    rational_roots,
    sturm_sign_changes,
)
from .extremal import (
    ExtremalProfile,
    RegionVerdict,
    Strength,
    classify_ray,
    classify_slope,
    exhaustion_bound,
    extremal_profile,
    extremal_region,
    orbifold_h,
    regular_ray_extremal,
    smooth_h,
)
from .topology import (
    Bundle,
    JoinParams,
    ProductRayError,
    WeightVector,
    bouquet_table,
    contact_invariants,
    km_from_params,
    params_from_km,
    quotient_orbifold,
)

__version__ = "0.1.0"
