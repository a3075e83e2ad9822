"""Iterated local model tournaments: generation, motif census, invariants, pursuit and embedding."""
from .census import (
    Census3,
    Census4,
    MarkovModel,
    census3,
    census3_recurrence,
    census3_series,
    census4,
    d3_proportion_limit,
    density,
    distinguish_sequences,
    markov_model,
    quasirandom_target,
    quasirandom_trace,
)
from .cops import CopsGame, GameState, cop_number, cops_win, verify_strategy
from .embed import EmbeddingMap, embed, universality_sweep, verify_embedding
from .generate import CloneMap, GeneratingSequence, generate, generate_oriented, ilmt_step, iterate, oriented_step
from .props import (
    ChromaticResult,
    InvariantReport,
    analyze,
    check_minimal_indominating_clone_lift,
    chromatic_number,
    connectivity,
    diameter,
    domination,
    hero,
)
from .tournament import (
    GraphError,
    IlmtError,
    OrientedGraph,
    SizeCapError,
    Tournament,
    automorphism_count,
    build,
    build_oriented,
    degree_profile,
    is_isomorphic,
    nonisomorphic_tournaments,
    parse_edgelist,
    format_edgelist,
    transitive,
)
from .verify import VerifyReport, run_suite

__version__ = "0.1.0"
