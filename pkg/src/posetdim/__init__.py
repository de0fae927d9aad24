"""posetdim: certified reversible-partition realizers for bounded-height
posets, plus exact combinatorial oracles and witness-family generators."""

from .coloring import (
    Coloring,
    EliminationForest,
    build_elimination_forest,
    coloring_from_forest,
    exact_min_p_centered,
    format_coloring,
    is_p_centered,
    is_p_centered_literal,
    parse_coloring,
)
from .errors import (
    CapacityError,
    CertificationError,
    InternalInvariantError,
    NotReversibleError,
    ParseError,
)
from .generators import (
    adjacency_poset,
    antichain,
    boolean_lattice,
    chain,
    incidence_poset,
    kelly,
    named_graph,
    random_poset,
    standard_example,
)
from .graphs import Graph, format_graph, parse_graph
from .oracle import (
    DimensionCertificate,
    all_linear_extensions,
    contains_standard_example,
    dimension_by_extension_search,
    exact_chromatic_number,
    exact_dimension,
    loglog_check,
)
from .posets import (
    LinearExtension,
    Poset,
    extend_reversed,
    find_alternating_cycle,
    format_poset,
    is_reversible,
    parse_poset,
    validate_realizer,
)
from .realizer import (
    IncPartition,
    LaminarIndex,
    SignatureTable,
    bound_exponent,
    build_laminar_index,
    compute_signature_table,
    dimension_bound,
    fits_bound,
    partition_incomparable_pairs,
    realizer_from_partition,
    refine_by_height,
    side_vector,
    signature_classes,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CertificationError",
    "Coloring",
    "DimensionCertificate",
    "EliminationForest",
    "Graph",
    "IncPartition",
    "InternalInvariantError",
    "LaminarIndex",
    "LinearExtension",
    "NotReversibleError",
    "ParseError",
    "Poset",
    "SignatureTable",
    "adjacency_poset",
    "all_linear_extensions",
    "antichain",
    "boolean_lattice",
    "bound_exponent",
    "build_elimination_forest",
    "build_laminar_index",
    "chain",
    "coloring_from_forest",
    "compute_signature_table",
    "contains_standard_example",
    "dimension_bound",
    "dimension_by_extension_search",
    "exact_chromatic_number",
    "exact_dimension",
    "exact_min_p_centered",
    "extend_reversed",
    "find_alternating_cycle",
    "fits_bound",
    "format_coloring",
    "format_graph",
    "format_poset",
    "incidence_poset",
    "is_p_centered",
    "is_p_centered_literal",
    "is_reversible",
    "kelly",
    "loglog_check",
    "named_graph",
    "parse_coloring",
    "parse_graph",
    "parse_poset",
    "partition_incomparable_pairs",
    "random_poset",
    "realizer_from_partition",
    "refine_by_height",
    "side_vector",
    "signature_classes",
    "standard_example",
    "validate_realizer",
]
