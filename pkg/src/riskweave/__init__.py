"""ANP-weighted FMEA risk ranking engine.

Pairwise-comparison priorities with consistency control, supermatrix
limiting for severity/occurrence/detection parameter weights, and
weighted-exponent risk priority numbers with comparative analytics
against the classic S*O*D ranking.
"""

from riskweave.judgments import (
    SAATY_SCALE,
    ComparisonContext,
    ComparisonMatrix,
    Judgment,
    JudgmentError,
    completeness,
    matrix_from_judgments,
)
from riskweave.model import (
    Cluster,
    DecisionNetwork,
    DependencyEdge,
    Element,
    ModelError,
    build_network,
    comparison_contexts,
    serialize_network,
)
from riskweave.priority import (
    ConsistencyReport,
    PriorityVector,
    consistency,
    most_inconsistent_judgment,
    principal_eigenvector,
)
from riskweave.supermatrix import (
    Supermatrix,
    SupermatrixError,
    SynthesizedPriorities,
    assemble_unweighted,
    cluster_weight_matrix,
    limit,
    synthesize_alternatives,
    weight_and_normalize,
)
from riskweave.fmea import (
    DETECTION_SCALE,
    OCCURRENCE_SCALE,
    SEVERITY_SCALE,
    ExponentWeights,
    FmeaItem,
    RiskRecord,
    classic_rpn,
    correct_weights,
    rank,
    recover_sod,
    score_items,
    weighted_rpn,
)
from riskweave.analysis import (
    ComparisonReport,
    ComparisonRow,
    compare,
    cronbach_alpha,
    largest_shifts,
    spearman,
)

__version__ = "0.1.0"
