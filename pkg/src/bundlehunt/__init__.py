"""Exact-arithmetic construction and verification of natural-cohomology
vector bundles on the product of two projective lines."""

__version__ = "0.1.0"

from .exactalg import (
    LaurentMatrix,
    LaurentPoly,
    RatMatrix,
    Rational,
    det_unit_order,
    kernel_basis,
    rank,
    rat_from_str,
    rat_to_str,
)
from .ext1 import (
    ExtCocycle,
    TwistInterval,
    assemble_transition,
    connecting_map,
    ext_dim,
    is_hn_top,
    relevant_twists,
    splitting_of_extension,
)
from .hunter import (
    Certificate,
    GenericityReport,
    HuntRequest,
    build_bundles,
    genericity_check,
    hunt,
    normalize_params,
    sample_eta,
    solve_degrees,
    verify_certificate,
)
from .p1 import (
    H0Profile,
    SplittingType,
    h0_from_transition,
    h_line,
    h_split,
    natural_type,
    splitting_from_h0_profile,
    splitting_from_transition,
)
from .qbundle import (
    BigradedEta,
    CechOracle,
    Cell,
    CohomologyTable,
    ConstantBundleDesc,
    FiberAutomorphism,
    HilbertParams,
    assemble_lambda,
    cech_oracle_h,
    check_natural,
    chi_Q,
    cohomology_table,
    gamma_action,
    hilbert_params,
    pushforward_cocycle,
    pushforward_splitting,
    square_window,
)

__all__ = [
    "LaurentMatrix",
    "LaurentPoly",
    "RatMatrix",
    "Rational",
    "det_unit_order",
    "kernel_basis",
    "rank",
    "rat_from_str",
    "rat_to_str",
    "ExtCocycle",
    "TwistInterval",
    "assemble_transition",
    "connecting_map",
    "ext_dim",
    "is_hn_top",
    "relevant_twists",
    "splitting_of_extension",
    "Certificate",
    "GenericityReport",
    "HuntRequest",
    "build_bundles",
    "genericity_check",
    "hunt",
    "normalize_params",
    "sample_eta",
    "solve_degrees",
    "verify_certificate",
    "H0Profile",
    "SplittingType",
    "h0_from_transition",
    "h_line",
    "h_split",
    "natural_type",
    "splitting_from_h0_profile",
    "splitting_from_transition",
    "BigradedEta",
    "CechOracle",
    "Cell",
    "CohomologyTable",
    "ConstantBundleDesc",
    "FiberAutomorphism",
    "HilbertParams",
    "assemble_lambda",
    "cech_oracle_h",
    "check_natural",
    "chi_Q",
    "cohomology_table",
    "gamma_action",
    "hilbert_params",
    "pushforward_cocycle",
    "pushforward_splitting",
    "square_window",
]
