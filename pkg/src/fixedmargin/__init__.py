"""Randomize presence-absence matrices with fixed row and column totals."""
from .estimators import NullModelTest, SwapRandomizer, TradeRandomizer
from .exceptions import (DegenerateMatrixError, EnumerationOverflowError,
                         MarginViolationError, MatrixFormatError,
                         NoSwapPossibleError)
from .matcore import (Margins, PresenceLists, fill_ratio, from_presence_lists,
                      margins, read_matrix, to_presence_lists, write_matrix)
from .metrics import (brute_force_checkerboards, cu_pair, empirical_p,
                      perturbation, total_checkerboards)
from .swapper import (SwapConfig, attempt_swap, estimate_attempts_per_success,
                      independent_swap, is_checkerboard,
                      recommended_swap_count, sequential_swap_ensemble)
from .trader import (RandomizerConfig, TradeOutcome, batch_randomize,
                     default_extraction_count, exclusive_sets, mix_seed,
                     pair_extraction, perform_trade, randomize)

__version__ = "0.1.0"
