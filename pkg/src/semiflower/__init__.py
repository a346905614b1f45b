"""Semi-flower automata, submonoid ranks, and the Hanna Neumann property."""

from .automaton import (
    Automaton,
    Transition,
    accepts,
    accessible_states,
    bpo_histogram,
    coaccessible_states,
    from_json_dict,
    in_degree,
    in_degree_histogram,
    is_deterministic,
    is_trim,
    out_degree,
    product,
    to_dot,
    to_json_dict,
    trim,
)
from .errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    CycleAvoidsBaseError,
    EmptyGeneratorsError,
    EmptyWordError,
    LengthMismatchError,
    NotDeterministicError,
    NotPrefixCodeError,
    NotTrimError,
    NoUniqueBaseError,
    SemiflowerError,
    TieDistanceError,
    TooManyBpisError,
    UnknownLetterError,
    UnknownStateError,
    WrongBpiCountError,
)
from .flower import (
    CyclePath,
    SemiFlowerAutomaton,
    as_semiflower,
    base_cycle_labels,
    build_flower,
    is_prefix_code,
    is_semiflower,
    prefix_violation,
    read_generator_file,
    simple_base_cycles,
)
from .hnp import HnpVerdict, analyze_pair, condition_c, reduced_rank
from .oracle import (
    FuzzConfig,
    MinimalGenerators,
    closure_upto,
    generates_word,
    language_equal_upto,
    language_upto,
    minimal_generators,
    oracle_rank,
    random_prefix_code,
)
from .rank import (
    BprSummary,
    RankReport,
    TwoBpiProfile,
    bpis,
    bpr,
    bpr_to_dot,
    distance_to_base,
    rank,
    rank_two_bpi,
    rank_unique_bpi,
    reconstruct_labels,
    sequence_inequality,
    two_bpi_profile,
    verify_euler_identity,
    verify_product_bpo_bound,
    verify_rank_identity_two_bpi,
    verify_two_bpi_lemma,
)

__version__ = "0.1.0"
