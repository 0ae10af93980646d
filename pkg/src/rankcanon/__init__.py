"""Exact canonical forms of bipartite block matrices and zero-entropy rank inequalities."""

from .block_matrix import (
    BlockMatrix,
    LocalTransform,
    SchmidtPairDecomposition,
    apply_local,
    flatten,
    partial_transpose_A,
    partial_transpose_B,
    schmidt_decompose,
    schmidt_rank,
    unflatten,
)
from .canonical_form import (
    CanonicalFormError,
    CanonicalProfile,
    CanonicalResult,
    ConjectureReport,
    Decomposition,
    check_conjecture,
    column_reduce,
    decompose,
    pipeline_check,
    to_canonical,
    verify_canonical_shape,
    verify_induction_chain,
)
from .exact_linalg import (
    ExactMatrix,
    GaussianRational,
    MixingConstantError,
    ShapeMismatchError,
    SpanBasis,
    det,
    faddeev_leverrier_charpoly,
    find_mixing_constant,
    independent_subset,
    inverse,
    is_psd_hermitian,
    rank,
    span_coefficients,
)
from .fileformat import MatrixDocument, ParseError, parse, serialize
from .inequalities import (
    InequalityReport,
    MarginalReport,
    SaturationReport,
    check_multipartite_suite,
    check_rank_inequality,
    check_saturation,
    check_tripartite_suite,
    marginal_necessary_check,
)
from .quantum_states import (
    DensityMatrix,
    StateError,
    ZeroEntropyVector,
    basis_state,
    ghz,
    max_entangled,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    pure_state,
    random_block_matrix,
    random_density,
    reduced_rank,
    tensor,
    validate,
    zero_entropy_vector,
)
from .reports import Check, Report

__version__ = "0.1.0"
