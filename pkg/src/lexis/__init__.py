"""Minimum-cost hierarchical representations of sequential data.

Build a layered DAG whose sources are alphabet symbols and whose targets
are the corpus strings, with reused substrings as intermediate nodes; then
analyze it: path-central nodes, a small core covering most derivations,
dictionary compression, and shuffle-based significance.
"""
from .analysis import CentralityReport, CoreResult, CoreStep, g_core, path_centrality
from .compression import (
    CompressionResult,
    compress_lr,
    compress_via_dag,
    decode,
    lexis_node_candidates,
    ngram_candidates,
)
from .corpus import (
    Alphabet,
    Corpus,
    ingest_char,
    ingest_tokens,
    load_corpus,
    save_corpus,
    shuffle_targets,
)
from .dag import LexisDag, Violation, from_json, trivial_dag
from .errors import (
    EmptyCorpus,
    EmptyTarget,
    InvalidArgument,
    InvalidCandidate,
    InvalidSpec,
    LexisError,
    OccurrenceMismatch,
    OverlappingOccurrences,
    ParseError,
    TooFewOccurrences,
    ValidationError,
)
from .features import (
    Feature,
    FeatureSet,
    class_count_matrix,
    count_matrix,
    extract_core_features,
    ngram_features,
)
from .glexis import (
    BuildResult,
    BuildTrace,
    DagStats,
    IterationRecord,
    RandomizationReport,
    TrialResult,
    build,
    build_longest_repeat,
    compare_randomized,
    dag_stats,
    run_randomized_trials,
)
from .significance import (
    NullModel,
    SignificanceRow,
    build_null,
    filter_significant,
    null_model_from_trials,
    p_value,
    significance_table,
)
from .synthetic import PlantedHierarchySpec, gen_motif, gen_planted, gen_uniform

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BuildResult",
    "BuildTrace",
    "CentralityReport",
    "CompressionResult",
    "CoreResult",
    "CoreStep",
    "Corpus",
    "DagStats",
    "EmptyCorpus",
    "EmptyTarget",
    "Feature",
    "FeatureSet",
    "InvalidArgument",
    "InvalidCandidate",
    "InvalidSpec",
    "IterationRecord",
    "LexisDag",
    "LexisError",
    "NullModel",
    "OccurrenceMismatch",
    "OverlappingOccurrences",
    "ParseError",
    "PlantedHierarchySpec",
    "RandomizationReport",
    "SignificanceRow",
    "TooFewOccurrences",
    "TrialResult",
    "ValidationError",
    "Violation",
    "build",
    "build_longest_repeat",
    "build_null",
    "class_count_matrix",
    "compare_randomized",
    "compress_lr",
    "compress_via_dag",
    "count_matrix",
    "dag_stats",
    "decode",
    "extract_core_features",
    "filter_significant",
    "from_json",
    "g_core",
    "gen_motif",
    "gen_planted",
    "gen_uniform",
    "ingest_char",
    "ingest_tokens",
    "lexis_node_candidates",
    "load_corpus",
    "ngram_candidates",
    "ngram_features",
    "null_model_from_trials",
    "p_value",
    "path_centrality",
    "run_randomized_trials",
    "save_corpus",
    "shuffle_targets",
    "significance_table",
    "trivial_dag",
]
