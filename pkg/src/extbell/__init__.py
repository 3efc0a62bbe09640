"""Extended Bell inequality toolkit for two-particle entangled states."""

from .bell import (
    BellEvaluation,
    bound_check,
    extended_bi_local,
    inequality_checks_arrays,
    original_bi_check,
    polar_envelope,
    qbcp,
    qbcp_arrays,
)
from .correlations import (
    CorrelationBreakdown,
    DensitySplit,
    DiagonalProbabilities,
    NumberCorrelations,
    correlation,
    correlation_closed_form,
    density_split,
    diagonal_probabilities,
    estimate_correlation,
    measurement_basis,
    number_correlations,
    sample_outcomes,
)
from .localmodel import (
    Populations,
    TableKind,
    classical_correlation,
    classical_max_search,
    classical_qbcp,
    sample_populations,
)
from .optimizer import (
    OptimizationProblem,
    OptimizationResult,
    OptimizerConfig,
    ScanAxis,
    landscape_scan,
    maximize_qbcp,
)
from .states import (
    Direction,
    EntangledPairState,
    PairFamily,
    photon_measurement_pair,
    spin_coherent_pair,
    state_vector,
)

__version__ = "0.1.0"
