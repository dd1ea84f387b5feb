"""Checkerboard swap baselines: single swaps, sequential and independent swap."""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._validation import check_binary_matrix, check_fill, check_seed
from .exceptions import NoSwapPossibleError
from .matcore import fill_ratio

ATTEMPTED = "attempted"
SUCCESSFUL = "successful"
COUNT_MODES = (ATTEMPTED, SUCCESSFUL)

_NO_TRACK = np.zeros((1, 1), dtype=np.uint8)


@dataclass(frozen=True)
class SwapConfig:
    burn_in_attempts: int = 30000
    n_swaps: int = 30000
    count_mode: str = ATTEMPTED
    seed: int = 0

    def __post_init__(self):
        if self.burn_in_attempts < 0 or self.n_swaps < 0:
            raise ValueError("swap counts must be non-negative")
        if self.count_mode not in COUNT_MODES:
            raise ValueError(f"count_mode must be one of {COUNT_MODES}")
        object.__setattr__(self, "seed", check_seed(self.seed))


def is_checkerboard(sub):
    (a, b), (c, d) = sub
    return (a, b, c, d) in ((0, 1, 1, 0), (1, 0, 0, 1))


def _has_checkerboard(m):
    from .metrics import total_checkerboards  # metrics imports this module

    return total_checkerboards(m) > 0


def _require_swappable(m):
    if m.shape[0] < 2 or m.shape[1] < 2:
        raise ValueError(f"swaps need at least a 2x2 matrix, got {m.shape}")


def attempt_swap(m, rng):
    """Try one swap on ``m`` in place; True if a checkerboard was flipped.

    ``m`` must be a writable uint8 array (as returned by the validators).
    """
    if not isinstance(m, np.ndarray) or m.dtype != np.uint8:
        raise TypeError("attempt_swap mutates its argument; pass a uint8 ndarray")
    _require_swappable(m)
    successes, _ = _kernels.swap_attempts(m, 1, rng, _NO_TRACK, False)
    return bool(successes)


def _swap_successes(m, n, rng):
    _, attempts = _kernels.swap_until(m, n, np.iinfo(np.int64).max, rng)
    return attempts


def sequential_swap_ensemble(m, k, cfg: SwapConfig = SwapConfig()):
    """Chain of ``k`` nulls: burn-in, then one successful swap per null."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    m = check_binary_matrix(m, copy=True)
    _require_swappable(m)
    if not _has_checkerboard(m):
        raise NoSwapPossibleError(
            "no swap possible: the matrix has no checkerboard and a single "
            "configuration")
    rng = np.random.default_rng(cfg.seed)
    _kernels.swap_attempts(m, cfg.burn_in_attempts, rng, _NO_TRACK, False)
    out = [m.copy()]
    for _ in range(k - 1):
        _swap_successes(m, 1, rng)
        out.append(m.copy())
    return out


def independent_swap(m, cfg: SwapConfig = SwapConfig()):
    """Copy of ``m`` after ``cfg.n_swaps`` swaps, counted per ``cfg.count_mode``."""
    m = check_binary_matrix(m, copy=True)
    if cfg.n_swaps == 0:
        return m
    _require_swappable(m)
    rng = np.random.default_rng(cfg.seed)
    if cfg.count_mode == ATTEMPTED:
        _kernels.swap_attempts(m, cfg.n_swaps, rng, _NO_TRACK, False)
    else:
        if not _has_checkerboard(m):
            raise NoSwapPossibleError(
                "no swap possible: counting successful swaps on a matrix "
                "without checkerboards would never terminate")
        _swap_successes(m, cfg.n_swaps, rng)
    return m


def estimate_attempts_per_success(fill):
    """Expected attempts per successful swap on an independent-cell matrix.

    A random 2x2 submatrix is a checkerboard with probability
    ``2 * f**2 * (1 - f)**2``; this returns its reciprocal.
    """
    f = check_fill(fill, open_interval=True)
    return 1.0 / (2.0 * f * f * (1.0 - f) * (1.0 - f))


def recommended_swap_count(m):
    """Twice the number of presences times the attempts needed per success."""
    m = check_binary_matrix(m)
    fill = fill_ratio(m)
    if fill <= 0.0 or fill >= 1.0:
        raise ValueError(
            f"fill {fill} admits no swaps; nothing to randomize")
    presences = int(m.sum(dtype=np.int64))
    return math.ceil(2 * presences * estimate_attempts_per_success(fill))
