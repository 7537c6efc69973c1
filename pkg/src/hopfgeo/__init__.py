"""Sub-Riemannian geometry of odd spheres under the Hopf fibration.

Closed-form normal geodesics on S^(2n-1), their open/closed classification,
the geodesic boundary value problem on S^3 by exhaustive branch enumeration,
and Carnot-Caratheodory distances validated by an independent shooting
oracle.
"""

from .bvp import (
    CASE_ANTIPODAL,
    CASE_FIBER,
    CASE_GENERAL,
    CASE_HORIZONTAL,
    BranchSolution,
    Endpoint,
    FiberSolution,
    SolverConfig,
    b_function,
    phi_function,
    psi_function,
    solutions_to_json,
    solve,
    solve_antipodal,
    solve_fiber,
    solve_general,
    solve_horizontal_sphere,
)
from .distance import (
    DistanceResult,
    OracleConfig,
    cc_distance,
    cc_distance_between,
    reduce_pair,
    shooting_oracle,
)
from .geodesics import (
    ClassificationReport,
    GeneralGeodesic,
    HorizontalityReport,
    S3GeodesicParams,
    arc_length,
    check_horizontal,
    classify,
    clifford_torus_level,
    curve_rows,
    detect_near_rational,
    eval_general,
    eval_s3,
    s3_sampler,
    velocity_general,
    velocity_s3,
)
from .sphere import (
    FiberPhase,
    HopfImage,
    SpherePoint,
    SU2Element,
    TangentVector,
    decompose,
    hopf_project,
    normal_field,
    su2_act,
    su2_act_raw,
    su2_sending_to_base,
    vertical_field,
)

__all__ = [
    "BranchSolution",
    "CASE_ANTIPODAL",
    "CASE_FIBER",
    "CASE_GENERAL",
    "CASE_HORIZONTAL",
    "ClassificationReport",
    "DistanceResult",
    "Endpoint",
    "FiberPhase",
    "FiberSolution",
    "GeneralGeodesic",
    "HopfImage",
    "HorizontalityReport",
    "OracleConfig",
    "S3GeodesicParams",
    "SU2Element",
    "SolverConfig",
    "SpherePoint",
    "TangentVector",
    "arc_length",
    "b_function",
    "cc_distance",
    "cc_distance_between",
    "check_horizontal",
    "classify",
    "clifford_torus_level",
    "curve_rows",
    "decompose",
    "detect_near_rational",
    "eval_general",
    "eval_s3",
    "hopf_project",
    "normal_field",
    "phi_function",
    "psi_function",
    "reduce_pair",
    "s3_sampler",
    "shooting_oracle",
    "solutions_to_json",
    "solve",
    "solve_antipodal",
    "solve_fiber",
    "solve_general",
    "solve_horizontal_sphere",
    "su2_act",
    "su2_act_raw",
    "su2_sending_to_base",
    "velocity_general",
    "velocity_s3",
    "vertical_field",
]

__version__ = "0.1.0"
