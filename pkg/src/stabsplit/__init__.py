"""Entanglement of stabilizer states computed from stabilizer generators."""
from .canonical import (
    CanonicalForm,
    CompatibilityIndices,
    EPRExtraction,
    InvariantViolation,
    canonicalize,
    check_canonical_form,
    compatibility,
    extract_epr,
)
from .entanglement import (
    EntanglementReport,
    Method,
    all_partitions,
    e_multi,
    entropy_bipartite,
    graph_bipartite_rank,
    is_finer,
)
from .gf2 import BitMatrix, kernel_basis, rank, rref_with_transform
from .pauli import PauliOperator, parse
from .stabilizer import (
    GraphAdjacency,
    Partition,
    StabilizerGroup,
    from_graph,
    kernel_subgroup,
    local_subgroup,
    measure_pauli,
)

__version__ = "0.1.0"
