"""Resistance distances and Kirchhoff indices of pocket graphs.

Builds generalized pocket graphs, computes their resistance distances and
Kirchhoff indices through closed-form block {1}-inverses assembled from
small factors, and audits the structured results (and the printed per-case
formulas) against a brute-force Laplacian pseudoinverse oracle.
"""

from .graphs import (
    BlockLayout,
    Graph,
    GraphFormatError,
    JoinStructureError,
    PocketSpec,
    build_pocket_graph,
    complete_graph,
    empty_graph,
    is_connected,
    join,
    laplacian,
    load_graph,
    make_layout,
    path_graph,
    validate_join_structure,
)
from .linalg import (
    DisconnectedGraphError,
    SingularMatrixError,
    block_inverse,
    eigenvalues_sym,
    invert,
    is_one_inverse,
    kron,
    pseudo_inverse_laplacian,
    shifted_group_inverse,
)
from .oneinv import (
    StructuredOneInverse,
    one_inverse_lemma26,
    pocket_d_inverse,
    split_base_join,
    structured_one_inverse,
    theorem3_one_inverse,
    theorem4_one_inverse,
)
from .resistance import (
    KirchhoffResult,
    check_metric,
    kirchhoff_from_one_inverse,
    kirchhoff_spectral,
    oracle_resistance,
    resistance_from_one_inverse,
    resistance_matrix,
)
from .formulas import (
    CaseId,
    CaseMismatchError,
    DiscrepancyReport,
    Theorem31Printed,
    Theorem41Printed,
    thm31_printed_kf,
    thm41_printed_kf,
    verify_construction,
)
from .sweep import builtin_fixtures, random_specs

__version__ = "0.1.0"

__all__ = [
    "BlockLayout",
    "CaseId",
    "CaseMismatchError",
    "DiscrepancyReport",
    "DisconnectedGraphError",
    "Graph",
    "GraphFormatError",
    "JoinStructureError",
    "KirchhoffResult",
    "PocketSpec",
    "SingularMatrixError",
    "StructuredOneInverse",
    "Theorem31Printed",
    "Theorem41Printed",
    "block_inverse",
    "build_pocket_graph",
    "builtin_fixtures",
    "check_metric",
    "complete_graph",
    "empty_graph",
    "eigenvalues_sym",
    "invert",
    "is_connected",
    "is_one_inverse",
    "join",
    "kirchhoff_from_one_inverse",
    "kirchhoff_spectral",
    "kron",
    "laplacian",
    "load_graph",
    "make_layout",
    "one_inverse_lemma26",
    "oracle_resistance",
    "path_graph",
    "pocket_d_inverse",
    "pseudo_inverse_laplacian",
    "random_specs",
    "resistance_from_one_inverse",
    "resistance_matrix",
    "shifted_group_inverse",
    "split_base_join",
    "structured_one_inverse",
    "theorem3_one_inverse",
    "theorem4_one_inverse",
    "thm31_printed_kf",
    "thm41_printed_kf",
    "validate_join_structure",
    "verify_construction",
]
