"""Complementary submatrices of Hadamard matrices.

Closed-form polar decomposition of the block complementary to a small
invertible corner, almost-Hadamard sign-pattern verification, norm bounds
with AHP-guarantee thresholds, Walsh embeddings, and exhaustive submatrix
scanning.
"""

from .ahp import AhpFailure, AhpVerdict, ahm_check, ahp_check, kn_matrix, one_norm
from .bounds import BoundReport, ahp_thresholds, bound_e_inf, hadamard_case_cubic_remark
from .complement import (
    ComplementFactors,
    InapplicableSplitError,
    SingularBlockError,
    complement_polar,
    det_complement_check,
    gram_identities_check,
    singular_value_complement_check,
    xa_ya,
)
from .embed import Embedding, embed_distinct_columns, embed_general
from .matcore import (
    BlockConstantSpec,
    MatrixFormatError,
    MaxOrderError,
    PartitionedHadamard,
    block_constant,
    catalog_matrix,
    catalog_names,
    is_hadamard,
    kronecker,
    paley12,
    parse_sign_matrix,
    permute_negate,
    serialize_sign_matrix,
    walsh,
)
from .numlin import PolarDecomposition, Svd, is_psd, polar, psd_sqrt, svd
from .scan import ScanRecord, ScanSummary, classify_split, enumerate_splits, scan
from .smallr import (
    PatternNotFoundError,
    SmallRForm,
    closed_form_r1,
    closed_form_r2,
    closed_form_r3,
    realize_type_pattern,
    spectrum_t,
)

__version__ = "0.1.0"

__all__ = [
    "AhpFailure",
    "AhpVerdict",
    "BlockConstantSpec",
    "BoundReport",
    "ComplementFactors",
    "Embedding",
    "InapplicableSplitError",
    "MatrixFormatError",
    "MaxOrderError",
    "PartitionedHadamard",
    "PatternNotFoundError",
    "PolarDecomposition",
    "ScanRecord",
    "ScanSummary",
    "SingularBlockError",
    "SmallRForm",
    "Svd",
    "ahm_check",
    "ahp_check",
    "ahp_thresholds",
    "block_constant",
    "bound_e_inf",
    "catalog_matrix",
    "catalog_names",
    "classify_split",
    "closed_form_r1",
    "closed_form_r2",
    "closed_form_r3",
    "complement_polar",
    "det_complement_check",
    "embed_distinct_columns",
    "embed_general",
    "enumerate_splits",
    "gram_identities_check",
    "hadamard_case_cubic_remark",
    "is_hadamard",
    "is_psd",
    "kn_matrix",
    "kronecker",
    "one_norm",
    "paley12",
    "parse_sign_matrix",
    "permute_negate",
    "polar",
    "psd_sqrt",
    "realize_type_pattern",
    "scan",
    "serialize_sign_matrix",
    "singular_value_complement_check",
    "spectrum_t",
    "svd",
    "walsh",
    "xa_ya",
]
