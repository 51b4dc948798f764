"""Exact Conway games, surreal-valued zero-sum games and Dutch-book certificates."""

from .surreal import (
    W,
    InfiniteValue,
    ParseError,
    SurrealRF,
    rf,
    rf_cmp,
    rf_format,
    rf_is_infinitesimal,
    rf_parse,
    rf_sign,
    rf_standard_part,
)
from .games import (
    DOWN,
    ONE,
    STAR,
    UP,
    ZERO,
    Game,
    NonDyadicNumber,
    NotANumber,
    SearchBudgetExceeded,
    Status,
    add,
    canonical,
    compare,
    confused,
    eq,
    format_game,
    game_to_number,
    is_infinitesimal,
    is_number,
    le,
    left_stop,
    lt,
    make_game,
    neg,
    nmul,
    number_to_game,
    parse_game,
    right_stop,
    status,
    status_bruteforce,
)
from .thermography import Thermograph, mean, mean_bound_check, temperature, thermograph
from .matrix_games import (
    Bet,
    Coherent,
    DutchBook,
    IncoherentBets,
    MixedStrategy,
    PayoffMatrix,
    SchemaError,
    Solution,
    analyze_coherence,
    lower_prevision,
    minimax_gap,
    solve_zero_sum,
    verify_coherence,
    verify_solution,
)
from .game_bets import (
    DutchBookCertificate,
    GameMatrix,
    MultiplierBudgetExceeded,
    PositiveMeanCertificate,
    ZeroMeanUndecided,
    classify,
    find_dutch_coefficients,
    find_positive_multiplier,
    mean_matrix,
    verify_certificate,
)

__version__ = "0.1.0"
