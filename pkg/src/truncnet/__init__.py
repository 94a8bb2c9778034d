"""Truncation-map view of ReLU networks and closed-form interpolating constructions."""

from .cones import (
    ConeCoordinates,
    PolyhedralCone,
    Region,
    Simplex,
    coefficients,
    cone_from_params,
    face_hyperplane,
    membership,
    params_from_cone,
    regular_simplex_with_inball,
    simplex_contains,
    truncate_via_cone,
)
from .constructors import (
    Construction,
    LabeledDataset,
    LabelPair,
    SeparationCertificate,
    build_cone_network,
    build_interpolating_network,
    check_linear_separability,
    collapse_stage,
    cone_construction,
    lift_and_cone,
    output_affine,
    separate_by_cone,
    simplex_construction,
)
from .datagen import GenSpec, gen_concentric, gen_crescent
from .estimators import (
    ConeInterpolatingClassifier,
    ConeTruncation,
    SimplexInterpolatingClassifier,
)
from .linalg import complete_columns, iota, kernel_basis, pinv, rank
from .network import (
    AffineLayer,
    Network,
    cumulative_params,
    forward,
    relu,
    validate_architecture,
)
from .truncation import (
    LiftResult,
    TruncationParams,
    lift,
    truncate,
    truncation_trajectory,
    verify_equivalence,
)

__version__ = "0.1.0"
