"""latfit: fit affine lattices to finite point sets via basis reduction.

Given points a_1..a_k in R^n, find an origin o and basis vectors d_1..d_n so
that every a_i lies near o + (integer combinations of the d_j), together with
scale-fair quality norms, theoretical certificates, and a least-squares
refinement pass.
"""

from .approx1d import (
    Candidate1D,
    Normalized1D,
    Result1D,
    approximate_1d,
    build_embedding_1d,
    extract_candidates_1d,
    guaranteed_norm_bound,
    normalize_1d,
    quality_floor,
    rational_approx_certificate,
)
from .approxaxis import AxisResult, approximate_axis
from .approxnd import (
    AnchorSet,
    CandidateND,
    NormalizedND,
    approximate_general,
    build_embedding_nd,
    enumerate_candidates,
    epsilon_sweep,
    normalize_affine,
    recover_lattice,
    select_anchors,
    select_denominator_block,
)
from .errors import (
    DegenerateInput,
    DependentRows,
    DimensionMismatch,
    LatfitError,
    NoCandidate,
    NoInvertibleBlock,
    ParseError,
    PrecisionLoss,
    RankDeficient,
    SingularMatrix,
)
from .lattice import (
    AffineLattice,
    FitReport,
    PointSet,
    diameter,
    lattice_delta,
    nearest_point,
    point_set,
    score,
    score_with_coeffs,
)
from .linalg import Matrix, Vector, determinant, invert, least_squares
from .lll import ReductionParams, ReductionResult, lll_reduce
from .refine import CoefficientAssignment, RefineResult, build_design, refine_fit

__version__ = "0.1.0"

__all__ = [
    "AffineLattice",
    "AnchorSet",
    "AxisResult",
    "Candidate1D",
    "CandidateND",
    "CoefficientAssignment",
    "DegenerateInput",
    "DependentRows",
    "DimensionMismatch",
    "FitReport",
    "LatfitError",
    "Matrix",
    "NoCandidate",
    "NoInvertibleBlock",
    "Normalized1D",
    "NormalizedND",
    "ParseError",
    "PointSet",
    "PrecisionLoss",
    "RankDeficient",
    "ReductionParams",
    "ReductionResult",
    "RefineResult",
    "Result1D",
    "SingularMatrix",
    "Vector",
    "approximate_1d",
    "approximate_axis",
    "approximate_general",
    "build_design",
    "build_embedding_1d",
    "build_embedding_nd",
    "determinant",
    "diameter",
    "enumerate_candidates",
    "epsilon_sweep",
    "extract_candidates_1d",
    "guaranteed_norm_bound",
    "invert",
    "lattice_delta",
    "least_squares",
    "lll_reduce",
    "nearest_point",
    "normalize_1d",
    "normalize_affine",
    "point_set",
    "quality_floor",
    "rational_approx_certificate",
    "recover_lattice",
    "refine_fit",
    "score",
    "score_with_coeffs",
    "select_anchors",
    "select_denominator_block",
]
