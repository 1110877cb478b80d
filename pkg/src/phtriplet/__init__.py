"""Boundary triplets for range representations of implicit port-Hamiltonian operators.

Constant-coefficient matrix differential operators 𝒫 = Σ P_k d^{2k},
𝒮 = Σ S_l d^{2l} and 𝒥 = Σ J_k d^k on an interval are turned into boundary
matrices, boundary maps and matrix criteria for boundary conditions. Every
Green identity can be checked against exact polynomial integration in
``phtriplet.greens``.
"""

from .classify import (
    ClassificationReport,
    RelationBC,
    SkewBC,
    SubspaceBasis,
    check_generalized_ph,
    classify_relation_bc,
    classify_skew_bc,
    oracle_classify,
    relation_adjoint_parameters,
    trace_bc_to_triplet_bc,
)
from .coercivity import CoercivityCertificate, coercivity_scan, fourier_coefficient_matrices
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    AssumptionViolated,
    DegeneratePencil,
    DimensionMismatch,
    NeitherHermitianNorSkew,
    NonFinite,
    NotHermitian,
    OrderZero,
    ParityViolated,
    ParseError,
    PHTripletError,
    SingularA,
)
from .greens import (
    VectorPolynomial,
    apply_even_order_pair,
    apply_skew,
    green_residual_range,
    green_residual_skew,
    l2_inner_product,
    poly_derivative,
)
from .opspec import (
    EvenOrderOperatorPair,
    Interval,
    SkewOperator,
    check_maxwell_symmetry,
    check_mixed_order,
    check_skew_parity,
    defect_dimensions,
)
from .triplet import (
    RangeTriplet,
    SkewTriplet,
    TraceLayout,
    build_boundary_matrix,
    build_q_matrix,
    build_range_triplet,
    build_skew_triplet,
    trace_of_polynomial,
    triplet_to_trace,
)

__version__ = "0.1.0"
