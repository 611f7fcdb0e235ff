"""Bipartite density-matrix analysis toolbox.

Separability criteria, entropy diagnostics, measurement-style
reductions and correlated product-state approximations for states on a
pair of finite-dimensional subsystems, plus a deterministic JSON state
format and a command line front end (``qdisent``).
"""

from .core import (
    DEFAULT_TOL,
    BipartiteState,
    DensityCheck,
    DimensionMismatch,
    InvalidPointer,
    InvalidSpec,
    NotHermitian,
    NotPSD,
    NotPSDResult,
    QDisentError,
    TraceNotOne,
    ZeroDenominator,
    ZeroProbability,
    density_defects,
    embed_local,
    hermitian_eigenvalues,
    hermitian_eigensystem,
    partial_trace,
    partial_transpose,
    product_state,
    tensor_product,
    validate_density,
    validate_observable,
    validate_projector,
)
from .states import (
    GENERATOR_KINDS,
    GenSpec,
    bell_state,
    coherent_pointer,
    generate,
    maximally_mixed,
    pure_product,
    random_density,
    random_ket,
    random_state,
    random_unitary,
    separable_mixture,
    thermal_pointer,
)
from .criteria import (
    CorrelationGap,
    PptResult,
    ReductionResult,
    SeparabilityVerdict,
    SubadditivityResult,
    correlation_gap,
    entropy_bits,
    ppt_test,
    reduction_criterion_test,
    separability_verdict,
    subadditivity_check,
    von_neumann_entropy,
    witness_expectation,
)
from .reductions import (
    averaged_projective_state,
    conditional_state,
    neumann_equivalence_gap,
    neumann_reduce,
    projective_collapse,
    validate_outcome_probs,
    zeno_disentangle,
)
from .correlated import (
    CorrelatedMethod,
    CorrelatedPair,
    DisentanglementReport,
    IterationRecord,
    NeumannMethod,
    NonConvergence,
    PointerMethod,
    SolverConfig,
    correlated_local_state,
    disentangled_product,
    disentanglement_report,
    fixed_point_residuals,
    fixed_point_solve,
)
from .twoqubit import (
    BENCH_GATE,
    BenchRow,
    coherent_pointer_local,
    coherent_pointer_product,
    diagonal_pointer_local,
    diagonal_pointer_product,
    transcription_bench,
)
from .stateio import (
    StateFormatError,
    doc_to_matrix,
    doc_to_state,
    dumps_canonical,
    file_digest,
    format_real,
    load_document,
    load_state,
    save_state,
    state_to_doc,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "BipartiteState",
    "DensityCheck",
    "QDisentError",
    "NotHermitian",
    "TraceNotOne",
    "NotPSD",
    "NotPSDResult",
    "DimensionMismatch",
    "ZeroProbability",
    "ZeroDenominator",
    "InvalidSpec",
    "InvalidPointer",
    "density_defects",
    "validate_density",
    "validate_projector",
    "validate_observable",
    "tensor_product",
    "product_state",
    "partial_trace",
    "partial_transpose",
    "embed_local",
    "hermitian_eigenvalues",
    "hermitian_eigensystem",
    "GENERATOR_KINDS",
    "GenSpec",
    "generate",
    "bell_state",
    "pure_product",
    "separable_mixture",
    "maximally_mixed",
    "random_state",
    "random_ket",
    "random_density",
    "random_unitary",
    "thermal_pointer",
    "coherent_pointer",
    "von_neumann_entropy",
    "entropy_bits",
    "PptResult",
    "ppt_test",
    "ReductionResult",
    "reduction_criterion_test",
    "SubadditivityResult",
    "subadditivity_check",
    "witness_expectation",
    "CorrelationGap",
    "correlation_gap",
    "SeparabilityVerdict",
    "separability_verdict",
    "neumann_reduce",
    "projective_collapse",
    "conditional_state",
    "zeno_disentangle",
    "validate_outcome_probs",
    "averaged_projective_state",
    "neumann_equivalence_gap",
    "NonConvergence",
    "SolverConfig",
    "IterationRecord",
    "CorrelatedPair",
    "correlated_local_state",
    "fixed_point_solve",
    "fixed_point_residuals",
    "disentangled_product",
    "NeumannMethod",
    "PointerMethod",
    "CorrelatedMethod",
    "DisentanglementReport",
    "disentanglement_report",
    "BENCH_GATE",
    "BenchRow",
    "diagonal_pointer_local",
    "diagonal_pointer_product",
    "coherent_pointer_local",
    "coherent_pointer_product",
    "transcription_bench",
    "StateFormatError",
    "format_real",
    "dumps_canonical",
    "state_to_doc",
    "doc_to_matrix",
    "doc_to_state",
    "load_document",
    "load_state",
    "save_state",
    "file_digest",
]
