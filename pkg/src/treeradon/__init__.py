"""Exact quadratic optimal transport and perpendicular Radon transforms on
locally finite metric trees.

Everything is computed in exact rational arithmetic: Wasserstein-2
distances and optimal plans, displacement interpolation and extension of
geodesics issued from Dirac masses, the combinatorial perpendicular Radon
transform of vertex functions with its closed-form inversion, and
reconstruction of finitely supported measures from their projections onto
complete geodesics. A property suite (``run_suite``) exercises the
geometric guarantees on randomized trees.
"""

from .errors import (
    CompletenessError,
    DomainError,
    FileFormatError,
    GenerationError,
    GeodesicError,
    MeasureError,
    OracleInconsistencyError,
    PointLocationError,
    RadonError,
    SolverError,
    TreeStructureError,
)
from .generate import (
    SuiteConfig,
    gen_measure,
    gen_point,
    gen_tree,
    gen_vertex_function,
    random_rational,
    random_signed_rational,
)
from .geodesics import (
    Cat0Comparison,
    Geodesic,
    check_cat0_triangle,
    geodesic_through_edge,
    geodesic_through_flag,
    midpoint,
    path,
    perpendicular,
    points_aligned,
    project,
)
from .measures import (
    Measure,
    RadonSample,
    dirac,
    make_measure,
    pushforward_projection,
    second_moment,
    supported_on,
)
from .radon import (
    DoubleCountIdentity,
    FlagTable,
    ReconstructionResult,
    VertexFunction,
    double_count_check,
    enumerate_flags,
    flag_mass,
    radon_forward,
    radon_invert,
    radon_measure,
    radon_oracle,
    reconstruct_measure,
    vertex_function,
)
from .transport import (
    CycleViolation,
    NonextendabilityWitness,
    TransportPlan,
    WassersteinGeodesic,
    check_nonextendable,
    dilate,
    extend_from_dirac,
    interpolate,
    is_cyclically_monotone,
    optimal_plan,
    w2_squared,
    w2_squared_enumerated,
)
from .tree import (
    EdgeRecord,
    Flag,
    Subtree,
    Tree,
    TreePoint,
    build_tree,
    is_geodesically_complete,
    point_sort_key,
)
from .verify import (
    DiracExtensionCheck,
    PropertyResult,
    SuiteReport,
    ThalesCheck,
    check_dirac_preserved_extension,
    check_thales,
    comparison_point_distance_sq,
    run_suite,
    w2_triangle_holds,
)

__version__ = "0.1.0"

__all__ = [
    "Cat0Comparison",
    "CompletenessError",
    "CycleViolation",
    "DiracExtensionCheck",
    "DomainError",
    "DoubleCountIdentity",
    "EdgeRecord",
    "FileFormatError",
    "Flag",
    "FlagTable",
    "GenerationError",
    "Geodesic",
    "GeodesicError",
    "Measure",
    "MeasureError",
    "NonextendabilityWitness",
    "OracleInconsistencyError",
    "PointLocationError",
    "PropertyResult",
    "RadonError",
    "RadonSample",
    "ReconstructionResult",
    "SolverError",
    "Subtree",
    "SuiteConfig",
    "SuiteReport",
    "ThalesCheck",
    "TransportPlan",
    "Tree",
    "TreePoint",
    "TreeStructureError",
    "VertexFunction",
    "WassersteinGeodesic",
    "build_tree",
    "check_cat0_triangle",
    "check_dirac_preserved_extension",
    "check_nonextendable",
    "check_thales",
    "comparison_point_distance_sq",
    "dilate",
    "dirac",
    "double_count_check",
    "enumerate_flags",
    "extend_from_dirac",
    "flag_mass",
    "gen_measure",
    "gen_point",
    "gen_tree",
    "gen_vertex_function",
    "geodesic_through_edge",
    "geodesic_through_flag",
    "interpolate",
    "is_cyclically_monotone",
    "is_geodesically_complete",
    "make_measure",
    "midpoint",
    "optimal_plan",
    "path",
    "perpendicular",
    "point_sort_key",
    "points_aligned",
    "project",
    "pushforward_projection",
    "radon_forward",
    "radon_invert",
    "radon_measure",
    "radon_oracle",
    "random_rational",
    "random_signed_rational",
    "reconstruct_measure",
    "run_suite",
    "second_moment",
    "supported_on",
    "vertex_function",
    "w2_squared",
    "w2_squared_enumerated",
    "w2_triangle_holds",
]
