"""Quantum channel factorization toolkit.

Conversions between Kraus, Choi and Stinespring representations, complementary
channels, Schur product channels built from correlation matrices, a linear
matrix inequality test for factorizability, and verification and convex
manipulation of direct-sum factorization certificates.
"""

from .channel import (
    ChannelChecks,
    ChoiMatrix,
    KrausChannel,
    apply_adjoint,
    apply_channel,
    channel_checks,
    channel_from_dilation,
    choi_from_kraus,
    convex_combine_channels,
    kraus_from_choi,
    stinespring_dilation,
)
from .complement import (
    ComplementData,
    apply_complement,
    apply_complement_adjoint,
    complement_data,
    complement_range_basis,
    is_extreme_channel,
    selfadjoint_kernel_basis,
)
from .errors import (
    CertificateInvalid,
    ChanfactError,
    DiagonalNotOne,
    DimensionMismatch,
    NoConvergence,
    NotHermitian,
    NotInSpan,
    NotInSpectrahedron,
    NotIsometry,
    NotPSD,
    NotTracePreserving,
    NotUnitary,
    RankTooHigh,
    SchemaError,
    TraceNotZero,
)
from .factorization import (
    CandidateReport,
    CertificateReport,
    ExtremalityReport,
    FactorAlgebra,
    FactorComponent,
    FactorizationCertificate,
    certificate_from_point,
    combine_certificates,
    decompose_by_factors,
    dilation_certificate,
    extremality_check,
    hm_equation_residuals,
    verify_certificate,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    complete_isometry,
    eigh,
    frob,
    kernel_basis,
    kron,
    partial_trace,
    psd_factor,
    rank_tol,
    unvec,
    vec,
)
from .lmi import (
    LmiMembership,
    LmiPoint,
    LmiSystem,
    build_lmi,
    extract_blocks,
    face_channel,
    lmi_eval,
    lmi_membership,
    point_from_blocks,
)
from .schur import (
    CorrelationMatrix,
    GramVectors,
    HmExample,
    correlation_from_gram,
    gram_from_correlation,
    hm_derived_point,
    hm_example,
    schur_channel,
    schur_channel_from_gram,
    schur_complement_adjoint_apply,
    schur_complement_apply,
    validate_correlation,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateReport",
    "CertificateInvalid",
    "CertificateReport",
    "ChanfactError",
    "ChannelChecks",
    "ChoiMatrix",
    "ComplementData",
    "CorrelationMatrix",
    "DEFAULT_TOL",
    "DiagonalNotOne",
    "DimensionMismatch",
    "ExtremalityReport",
    "FactorAlgebra",
    "FactorComponent",
    "FactorizationCertificate",
    "GramVectors",
    "HmExample",
    "KrausChannel",
    "LmiMembership",
    "LmiPoint",
    "LmiSystem",
    "NoConvergence",
    "NotHermitian",
    "NotInSpan",
    "NotInSpectrahedron",
    "NotIsometry",
    "NotPSD",
    "NotTracePreserving",
    "NotUnitary",
    "RankTooHigh",
    "SchemaError",
    "Tolerance",
    "TraceNotZero",
    "apply_adjoint",
    "apply_channel",
    "apply_complement",
    "apply_complement_adjoint",
    "build_lmi",
    "certificate_from_point",
    "channel_checks",
    "channel_from_dilation",
    "choi_from_kraus",
    "combine_certificates",
    "complement_data",
    "complement_range_basis",
    "complete_isometry",
    "convex_combine_channels",
    "correlation_from_gram",
    "decompose_by_factors",
    "dilation_certificate",
    "eigh",
    "extract_blocks",
    "extremality_check",
    "face_channel",
    "frob",
    "gram_from_correlation",
    "hm_derived_point",
    "hm_equation_residuals",
    "hm_example",
    "is_extreme_channel",
    "kernel_basis",
    "kraus_from_choi",
    "kron",
    "lmi_eval",
    "lmi_membership",
    "partial_trace",
    "point_from_blocks",
    "psd_factor",
    "rank_tol",
    "schur_channel",
    "schur_channel_from_gram",
    "schur_complement_adjoint_apply",
    "schur_complement_apply",
    "selfadjoint_kernel_basis",
    "stinespring_dilation",
    "unvec",
    "validate_correlation",
    "vec",
]
