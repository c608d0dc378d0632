"""Exhaustive construction of block codes for discrete memoryless channels."""
from .capacity import capacity_bounds, capacity_stream, log2_bounds
from .channel import Channel, bec, bsc, kron_power, lex_order, noiseless, parse_channel, word_at
from .codes import (
    BlockCode,
    EnumerationCursor,
    code_count,
    enumerate_full,
    enumerate_pruned,
    message_number,
    parse_code,
    rate_at_least,
)
from .creal import (
    Budget,
    ComputableReal,
    cr_add,
    cr_from_rational,
    cr_max,
    cr_mul,
    cr_query,
    dyadic_below,
    parse_expression,
    rat_interpolation,
    rlb,
)
from .errorprob import ErrorProfile, achieves_error, error_profile, lambda_max, lambda_message
from .exceptions import (
    BudgetExhausted,
    FindCodeError,
    InfeasibleError,
    InvalidInputError,
    ResourceLimitError,
)
from .rational import (
    Ordering,
    blb,
    format_rational,
    parse_rational,
    rational_arithmetic,
    rational_compare,
    rational_max,
)
from .search import SearchOptions, SearchReport, capacity_sequence, find_code, find_code_ext
from .simulate import SimulationResult, simulate

__version__ = "0.1.0"
