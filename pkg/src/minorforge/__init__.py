"""Exact clique-minor invariants, certified minors and corpus sweeps for small graphs."""

from .certificate import MinorCertificate, Verdict, validate_certificate
from .errors import (
    BadSeed,
    EmptySet,
    GraphError,
    InvalidEdge,
    LoopRejected,
    NotConnected,
    ParseError,
    TooLarge,
    Undefined,
)
from .graph import (
    MAX_N,
    Graph,
    bits,
    complement,
    complete_graph,
    components,
    contract_set,
    empty_graph,
    format_edge_list,
    from_edge_list,
    from_edge_mask,
    from_graph6,
    induced_subgraph,
    is_bipartite,
    is_connected,
    is_forest,
    parse_edge_list,
    to_graph6,
    vertex_set,
)
from .invariants import (
    HadwigerMemo,
    InvariantBundle,
    chromatic_number,
    compute_bundle,
    hadwiger_number,
    max_clique,
    max_independent_set,
)
from .minors import DominatingSetTrace, dm_clique_minor, find_induced_p3, grow_dominating_set
from .sweep import CorpusSource, SweepFilter, SweepSummary, enumerate_labeled, run_sweep
from .theorems import (
    FOREST_PM,
    THEOREMS,
    TWIN_CLIQUES,
    ExtremalClass,
    TheoremReport,
    check,
    check_all,
    classify_equality,
    recognize_lemma1,
    recognize_lemma2,
    verify_evidence,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
