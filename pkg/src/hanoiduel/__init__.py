"""Two-player Tower of Hanoi: rules, strategies, and exhaustive verification."""

from .core import (
    Ending,
    GameConfig,
    GameError,
    GameState,
    IllegalMove,
    InapplicableEnding,
    Move,
    Weights,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
    parse_ending,
)
from .notation import (
    Atom,
    Concat,
    InfiniteRepetition,
    NotationError,
    Repeat,
    ReplayReport,
    Reverse,
    expand,
    parse,
    replay,
    reverse_seq,
    seq_length,
    to_text,
)
from .construct import (
    AllWeightsEqual,
    NotIntermediate,
    StrategyPlan,
    even_transfer,
    minimal_transfer,
    odd_transfer,
    return_transfer,
    scoring_strategy,
    two_disk_family,
)
from .scoreforms import (
    MinMovesResult,
    Outcome,
    Verdict,
    invariants_of,
    min_moves_normal,
    min_moves_scoring,
    normal_verdict,
    scoring_verdict,
)
from .solve import (
    BudgetExceeded,
    GameGraph,
    Labeling,
    SearchResult,
    bounded_scoring_search,
    build_graph,
    export_graph,
    shortest_forced_win,
    solve_normal,
)

__version__ = "0.1.0"

__all__ = [
    "Ending",
    "GameConfig",
    "GameError",
    "GameState",
    "IllegalMove",
    "InapplicableEnding",
    "Move",
    "Weights",
    "apply_move",
    "initial_state",
    "is_terminal",
    "legal_moves",
    "parse_ending",
    "Atom",
    "Concat",
    "InfiniteRepetition",
    "NotationError",
    "Repeat",
    "ReplayReport",
    "Reverse",
    "expand",
    "parse",
    "replay",
    "reverse_seq",
    "seq_length",
    "to_text",
    "AllWeightsEqual",
    "NotIntermediate",
    "StrategyPlan",
    "even_transfer",
    "minimal_transfer",
    "odd_transfer",
    "return_transfer",
    "scoring_strategy",
    "two_disk_family",
    "MinMovesResult",
    "Outcome",
    "Verdict",
    "invariants_of",
    "min_moves_normal",
    "min_moves_scoring",
    "normal_verdict",
    "scoring_verdict",
    "BudgetExceeded",
    "GameGraph",
    "Labeling",
    "SearchResult",
    "bounded_scoring_search",
    "build_graph",
    "export_graph",
    "shortest_forced_win",
    "solve_normal",
]
