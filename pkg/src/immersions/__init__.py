"""Exact clique immersions in small graphs.

Certificates (terminals plus edge-disjoint paths) are first-class
values: the search, the constructive builder, and the batch checkers
all emit them, and one verifier accepts or rejects them against a host
graph.  Everything is exact and deterministic; nothing here
approximates.
"""

from .checks import (
    CHECK_NAMES,
    CheckOutcome,
    CheckReport,
    check_alpha3,
    check_appendix,
    check_theorem_main,
    check_vergara,
    evaluate_graph,
    run_batch,
)
from .coloring import (
    ColoringCertificate,
    JoinPartition,
    chromatic_number,
    find_join_partition,
    is_k_colorable,
    is_vertex_critical,
)
from .construct import (
    ExtensionState,
    JoinStructure,
    SideSupport,
    build_third_immersion,
    build_type_paths,
    classify_support,
    extension_step,
    fresh_extension_state,
)
from .errors import (
    DegenerateInputError,
    Graph6Error,
    InapplicableCheckError,
    IndependencePreconditionError,
    MalformedCertificateError,
    NoImmersionError,
    PreconditionError,
    SizeCapError,
    UnsupportedSizeError,
)
from .families import (
    canonical_form,
    enumerate_alpha_le2,
    enumerate_graphs,
    enumerate_triangle_free,
    graph_from_canonical_form,
    sample_alpha_le2,
)
from .graphs import (
    Graph,
    bits,
    complement,
    encode_graph6,
    independence_number,
    induced_subgraph,
    is_clique,
    mask_of,
    max_clique,
    max_independent_set,
    non_neighborhood,
    parse_graph6,
)
from .immersion import (
    PLAIN,
    STRONG,
    ODD,
    STRONG_ODD,
    ImmersionCertificate,
    ImmersionFlags,
    VerifyReport,
    certificate_from_json,
    certificate_to_json,
    clique_certificate,
    find_clique_immersion,
    max_clique_immersion,
    minimize_support,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "CHECK_NAMES",
    "CheckOutcome",
    "CheckReport",
    "ColoringCertificate",
    "DegenerateInputError",
    "ExtensionState",
    "Graph",
    "Graph6Error",
    "ImmersionCertificate",
    "ImmersionFlags",
    "InapplicableCheckError",
    "IndependencePreconditionError",
    "JoinPartition",
    "JoinStructure",
    "MalformedCertificateError",
    "NoImmersionError",
    "PLAIN",
    "ODD",
    "PreconditionError",
    "STRONG",
    "STRONG_ODD",
    "SideSupport",
    "SizeCapError",
    "UnsupportedSizeError",
    "VerifyReport",
    "bits",
    "build_third_immersion",
    "build_type_paths",
    "canonical_form",
    "certificate_from_json",
    "certificate_to_json",
    "check_alpha3",
    "check_appendix",
    "check_theorem_main",
    "check_vergara",
    "chromatic_number",
    "classify_support",
    "clique_certificate",
    "complement",
    "encode_graph6",
    "enumerate_alpha_le2",
    "enumerate_graphs",
    "enumerate_triangle_free",
    "evaluate_graph",
    "extension_step",
    "find_clique_immersion",
    "find_join_partition",
    "fresh_extension_state",
    "graph_from_canonical_form",
    "independence_number",
    "induced_subgraph",
    "is_clique",
    "is_k_colorable",
    "is_vertex_critical",
    "mask_of",
    "max_clique",
    "max_clique_immersion",
    "max_independent_set",
    "minimize_support",
    "non_neighborhood",
    "parse_graph6",
    "run_batch",
    "sample_alpha_le2",
    "verify_certificate",
]
