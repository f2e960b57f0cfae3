"""Critical orbits of z^2 + c over the p-adic integers.

Exact fixed-precision arithmetic in Z_p, orbit types level by level, the
complete list of post-critically finite parameters for small odd primes,
critical orbit trees, and the linearization checks near c = -2 in Z_3.
"""

from .atlas import Atlas, AtlasNode, atlas_sweep
from .linearization import (
    C2Report,
    Gamma0Case,
    LinearizationParams,
    NoFixedPointError,
    RootOfUnityError,
    fixed_points,
    lemma54_claims,
    radius_lower_bound,
    translation_cascade,
    verify_c2,
)
from .orbits import (
    Classification,
    LevelProfile,
    LocalAffineMap,
    OrbitInvariantError,
    OrbitRecord,
    OrbitType,
    Verdict,
    attracting_cycle_point,
    classify,
    cycle_multiplier,
    isometry_check,
    level_profile,
    lifted_types,
    local_affine_map,
    orbit_mod,
)
from .padic import (
    AT_LEAST_PRECISION,
    PAdicInt,
    PrecisionError,
    RadiusExp,
    from_integer,
    hensel_lift,
    invert_unit,
    sqrt,
    valuation,
)
from .pcf import (
    CriticalRelation,
    FrontierExplosion,
    OrbitTypeCandidate,
    PcfParameter,
    candidate_types,
    count_bounds,
    enumerate_pcf,
    exactness_filter,
    find_roots,
)
from .trees import (
    DiskVertex,
    OrbitTree,
    TreeShapeError,
    TreeShapeReport,
    critical_orbit_tree,
    disk_join,
    path_metric,
    shape_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
