"""Separation of spherical convex bodies on S^n.

A body is the spherical hull of finitely many unit generators.  The
library decides whether two such hulls are disjoint (a homogeneous
feasibility program over the generating cones), produces a separating
pole whose orthogonal great hypersphere splits the bodies (a
margin-maximizing program), and can alternatively construct such a pole
step by step: project to a tangent space, fatten, separate the Euclidean
hulls, and contract the hyperplane offset to zero.
"""

from .convexity import (
    EuclideanHullBody,
    MembershipResult,
    SphericalBody,
    TangentPolytope,
    fatten,
    hemisphericity_witness,
    project_body,
    pullback,
    scale_union_hull,
    spherical_hull_member,
)
from .errors import (
    ContractionStalled,
    DeltaOutOfRange,
    DimensionMismatch,
    EpsilonSearchFailed,
    GenerationFailed,
    IterationLimit,
    NegativeEpsilon,
    NotHemispherical,
    NumericallyAmbiguous,
    OutsideOpenHemisphere,
    SphSepError,
    UnsupportedDimension,
    ZeroVector,
)
from .geometry import (
    DEFAULT_CONFIG,
    TangentFrame,
    ToleranceConfig,
    central_project,
    central_unproject,
    normalize,
    orthonormal_frame,
)
from .harness import (
    CampaignReport,
    InstanceSpec,
    Mode,
    generate,
    run_equivalence_campaign,
)
from .lp import EQ, GE, LE, LinearProgram, LpOutcome, LpStatus, solve
from .separation import (
    Hyperplane,
    Intersection,
    ProofTrace,
    SeparationCertificate,
    dual_witness,
    primal_intersect,
    proof_path_witness,
    wedge_membership,
    wedge_openness_probe,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignReport",
    "ContractionStalled",
    "DEFAULT_CONFIG",
    "DeltaOutOfRange",
    "DimensionMismatch",
    "EQ",
    "EpsilonSearchFailed",
    "EuclideanHullBody",
    "GE",
    "GenerationFailed",
    "Hyperplane",
    "InstanceSpec",
    "Intersection",
    "IterationLimit",
    "LE",
    "LinearProgram",
    "LpOutcome",
    "LpStatus",
    "MembershipResult",
    "Mode",
    "NegativeEpsilon",
    "NotHemispherical",
    "NumericallyAmbiguous",
    "OutsideOpenHemisphere",
    "ProofTrace",
    "SeparationCertificate",
    "SphSepError",
    "SphericalBody",
    "TangentFrame",
    "TangentPolytope",
    "ToleranceConfig",
    "UnsupportedDimension",
    "ZeroVector",
    "central_project",
    "central_unproject",
    "dual_witness",
    "fatten",
    "generate",
    "hemisphericity_witness",
    "normalize",
    "orthonormal_frame",
    "primal_intersect",
    "project_body",
    "proof_path_witness",
    "pullback",
    "run_equivalence_campaign",
    "scale_union_hull",
    "spherical_hull_member",
    "wedge_membership",
    "wedge_openness_probe",
]
