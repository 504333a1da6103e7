"""Jaro-based dialectometry over Swadesh-style wordlists."""

__version__ = "0.1.0"

from .classification import (  # noqa: E402
    ClusterTree,
    DistanceMatrix,
    build_matrix,
    read_matrix_csv,
    to_newick,
    upgma,
)
from .comparison import (  # noqa: E402
    ConceptScore,
    ConceptStatus,
    DenominatorMode,
    PairwiseComparison,
    VariantPolicy,
    all_pairs,
    compare_pair,
    percentage,
    score_concept,
)
from .estimators import UPGMAClustering, WordlistDistance  # noqa: E402
from .metrics import (  # noqa: E402
    METRICS,
    jaro_distance,
    jaro_similarity,
    jaro_similarity_naive,
    jaro_winkler_similarity,
    levenshtein_similarity,
    metric_lookup,
)
from .wordlist import (  # noqa: E402
    Concept,
    ConceptList,
    LexicalForm,
    NormalizationOptions,
    Wordlist,
    default_concept_list,
    load_concept_list,
    normalize_form,
    parse_wordlist,
    read_wide_wordlists,
    read_wordlists,
    validate_wordlists,
)

__all__ = [
    "ClusterTree",
    "Concept",
    "ConceptList",
    "ConceptScore",
    "ConceptStatus",
    "DenominatorMode",
    "DistanceMatrix",
    "LexicalForm",
    "METRICS",
    "NormalizationOptions",
    "PairwiseComparison",
    "UPGMAClustering",
    "VariantPolicy",
    "Wordlist",
    "WordlistDistance",
    "all_pairs",
    "build_matrix",
    "compare_pair",
    "default_concept_list",
    "jaro_distance",
    "jaro_similarity",
    "jaro_similarity_naive",
    "jaro_winkler_similarity",
    "levenshtein_similarity",
    "load_concept_list",
    "metric_lookup",
    "normalize_form",
    "parse_wordlist",
    "percentage",
    "read_matrix_csv",
    "read_wide_wordlists",
    "read_wordlists",
    "score_concept",
    "to_newick",
    "upgma",
    "validate_wordlists",
]
