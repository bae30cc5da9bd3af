"""conecuts: exact cutting planes and integer hulls for conic sets in the plane.

Everything is exact rational (or quadratic-surd) arithmetic; no floats are
used in any decision.  See README.md for the tour.
"""

from __future__ import annotations

from conecuts.certify import (
    DEFAULT_BOX,
    Certificate,
    NotProven,
    certify_empty,
    derive_face,
    find_binding_conic,
)
from conecuts.cgf import (
    CutInequality,
    Derivation,
    GammaDomain,
    GammaFunction,
    LinearFunctional,
    PropertyReport,
    aggregation_round_cut,
    check_cone_monotone,
    check_positive_on_cone,
    check_subadditive,
    eval_f_gamma,
    gamma_domain,
    gamma_domain_report,
    make_cut,
    orthant_monotone_counterexample,
    split_and_project_cut,
)
from conecuts.conic2d import (
    ConicBlock2D,
    Line2D,
    QuadraticConic,
    SupportResult,
    asymptotes,
    blocks_hash,
    classify_conic,
    halfspace_block,
    hyperbola_cuts,
    hyperbola_to_soc,
    quadratic_to_block,
    recession_normals,
    soc_block,
    support_minimize,
)
from conecuts.errors import (
    ConeCutsError,
    DegenerateAggregationError,
    DegenerateConicError,
    HypothesisViolationError,
    InadmissibleGammaError,
    InternalInconsistencyError,
    InvalidInequalityError,
    MalformedInputError,
    MixedRadicandError,
    NonConvexRegionError,
    NotAFaceError,
    NotEmptyError,
    NotSeparableError,
    ProjectionInvalidError,
    UnsupportedConstructError,
    UnsupportedRotationError,
)
from conecuts.exact import (
    QuadraticSurd,
    ceil_surd,
    format_rational,
    format_surd,
    parse_rational,
    sqrt_surd,
    surd,
)
from conecuts.hull import (
    Band,
    HullWindow,
    OuterApprox,
    Polyhedron2D,
    axis_ray_threshold,
    contains_point,
    enumerate_integer_points,
    find_rational_interior_point,
    integer_hull_window,
    lattice_free_band,
    outer_approx_bounded,
    rational_separate,
    recession_cone,
    recession_dual,
    support_bound,
)
from conecuts.instances import Instance, dump, dumps, load, loads

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # exact arithmetic
    "QuadraticSurd", "surd", "sqrt_surd", "ceil_surd",
    "parse_rational", "format_rational", "format_surd",
    # cut functions
    "GammaDomain", "GammaFunction", "LinearFunctional", "gamma_domain",
    "gamma_domain_report", "eval_f_gamma", "CutInequality", "Derivation",
    "make_cut", "split_and_project_cut", "aggregation_round_cut",
    "PropertyReport", "check_subadditive", "check_cone_monotone",
    "check_positive_on_cone", "orthant_monotone_counterexample",
    # conic blocks
    "ConicBlock2D", "QuadraticConic", "Line2D", "SupportResult",
    "classify_conic", "quadratic_to_block", "hyperbola_to_soc", "soc_block",
    "halfspace_block",
    "hyperbola_cuts", "asymptotes", "recession_normals", "support_minimize",
    "blocks_hash",
    # hulls and polyhedra
    "enumerate_integer_points", "contains_point", "integer_hull_window",
    "HullWindow", "Polyhedron2D", "axis_ray_threshold", "OuterApprox",
    "outer_approx_bounded", "Band", "lattice_free_band", "rational_separate",
    "support_bound", "recession_cone", "recession_dual",
    "find_rational_interior_point",
    # certificates
    "DEFAULT_BOX", "Certificate", "NotProven", "certify_empty",
    "derive_face", "find_binding_conic",
    # instances
    "Instance", "load", "loads", "dump", "dumps",
    # errors
    "ConeCutsError", "MalformedInputError", "UnsupportedConstructError",
    "UnsupportedRotationError", "DegenerateConicError", "NonConvexRegionError",
    "MixedRadicandError", "InadmissibleGammaError", "ProjectionInvalidError",
    "DegenerateAggregationError", "HypothesisViolationError",
    "NotSeparableError", "NotEmptyError", "InvalidInequalityError",
    "NotAFaceError", "InternalInconsistencyError",
]
