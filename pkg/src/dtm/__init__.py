"""Exact discrete maximal transforms, variation checks, and extremal search."""

from .sequence import (
    DomainError,
    ExactRational,
    ParseError,
    Sequence,
    abs_of,
    derivative,
    format_rational,
    lp_norm,
    make_sequence,
    parse_rational,
    parse_sequence,
    sequence_to_text,
    serialize_sequence,
    total_variation,
    wkp_norm,
)
from .transforms import (
    KINDS,
    ConsistencyError,
    MaximalTransform,
    centered_average,
    centered_transform,
    noncentered_transform_fast,
    noncentered_transform_naive,
    one_sided_transform,
    one_sided_value,
    parse_transform_csv,
    total_variation_of_transform,
    transform_of_kind,
    transform_to_csv,
    transform_value_at,
    window_average,
)
from .extrema import ExtremaChain, extrema_chain
from .checks import (
    CENTERED_L1_BOUND,
    CONTRIBUTION_BOUND,
    LEMMA_BOUND,
    LEMMA_GAP2_BOUND,
    IncreasingIntSeq,
    VerificationReport,
    check_centered_bound,
    check_extrema_variation_identity,
    check_key_inequality,
    check_lemma_bounds,
    check_local_max_touch,
    check_one_sided_relation,
    check_question_b,
    check_tanaka,
    contribution_bound_audit,
    lemma_sum,
    reverify_report,
)
from .search import (
    MODES,
    OBJECTIVES,
    SearchConfig,
    SearchReport,
    canonicalize,
    enumerate_canonical,
    exhaustive_search,
    merge_reports,
    run_search,
    stochastic_search,
)

__version__ = "0.1.0"
