"""Fixed-margin randomization by trading elements between presence lists.

Two presence lists are drawn at random, the elements each holds that the
other lacks are found, and an equal number of them is exchanged.  List
lengths never change and no element is ever duplicated within a list, so
both row and column totals of the matrix survive every trade.

Two code paths exist.  :func:`pair_extraction` / :func:`perform_trade` work
on Python lists and return a full :class:`TradeOutcome`; :func:`randomize`
runs the compiled kernel over flat CSR lists.  They consume random draws in
the same order, so for the same seed they produce the same matrix.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from ._validation import check_binary_matrix, check_seed
from .exceptions import DegenerateMatrixError
from .matcore import PresenceLists, from_csr, to_csr

UNIFORM = "uniform_1_to_n"
SHUFFLE = "shuffle_reassign"
TRADE_MODES = (UNIFORM, SHUFFLE)

_MASK64 = (1 << 64) - 1
_NO_TRACK = np.zeros((1, 1), dtype=np.uint8)


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix_seed(seed, index):
    """Derive the seed of null ``index`` from a base seed.

    ``splitmix64(splitmix64(seed) XOR index)`` with the standard splitmix64
    constants (increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9
    and 0x94D049BB133111EB, shifts 30/27/31).  For a fixed seed the map
    index -> derived seed is injective.
    """
    return _splitmix64(_splitmix64(int(seed) & _MASK64) ^ (int(index) & _MASK64))


@dataclass(frozen=True)
class TradeOutcome:
    index_a: int
    index_b: int
    exclusive_a: tuple
    exclusive_b: tuple
    n: int
    t: int
    moved_a_to_b: tuple
    moved_b_to_a: tuple


@dataclass(frozen=True)
class RandomizerConfig:
    """Settings for :func:`randomize`.

    ``n_extractions=None`` means :func:`default_extraction_count` of the
    matrix being randomized.  Extractions that find nothing to trade still
    count.
    """

    n_extractions: Optional[int] = None
    trade_count_mode: str = UNIFORM
    seed: int = 0

    def __post_init__(self):
        if self.n_extractions is not None and self.n_extractions < 1:
            raise ValueError(
                f"n_extractions must be >= 1, got {self.n_extractions}")
        if self.trade_count_mode not in TRADE_MODES:
            raise ValueError(
                f"trade_count_mode must be one of {TRADE_MODES}, "
                f"got {self.trade_count_mode!r}")
        object.__setattr__(self, "seed", check_seed(self.seed))

    def resolve(self, m):
        """Copy with ``n_extractions`` filled in for matrix ``m``."""
        if self.n_extractions is not None:
            return self
        return RandomizerConfig(default_extraction_count(m),
                                self.trade_count_mode, self.seed)


def exclusive_sets(a, b):
    """Elements only in ``a`` and only in ``b``, each in ascending order."""
    sa, sb = set(a), set(b)
    return sorted(sa - sb), sorted(sb - sa)


def _randint(rng, low, high):
    # same bounded draw as the compiled kernel; see fixedmargin._kernels
    return low + int(rng.random() * (high - low))


def _partial_shuffle(values, steps, rng):
    values = list(values)
    for k in range(steps):
        r = _randint(rng, k, len(values))
        values[k], values[r] = values[r], values[k]
    return values


def perform_trade(a, b, rng, mode=UNIFORM, index_a=0, index_b=1):
    """Trade exclusive elements between lists ``a`` and ``b``.

    Returns ``(new_a, new_b, outcome)`` with both new lists sorted.  In
    ``uniform_1_to_n`` mode the trade count ``t`` is uniform on ``1..n``;
    in ``shuffle_reassign`` mode the pooled exclusive elements are dealt back
    at random into groups of the original sizes, so ``t`` may be 0.
    """
    if mode not in TRADE_MODES:
        raise ValueError(f"unknown trade mode {mode!r}")
    excl_a, excl_b = exclusive_sets(a, b)
    n = min(len(excl_a), len(excl_b))
    if n == 0:
        outcome = TradeOutcome(index_a, index_b, tuple(excl_a), tuple(excl_b),
                               0, 0, (), ())
        return sorted(a), sorted(b), outcome

    if mode == UNIFORM:
        t = _randint(rng, 1, n + 1)
        moved_a = _partial_shuffle(excl_a, t, rng)[:t]
        moved_b = _partial_shuffle(excl_b, t, rng)[:t]
    else:
        pool = _partial_shuffle(excl_a + excl_b, len(excl_a), rng)
        keep_a = set(pool[:len(excl_a)])
        moved_b = [e for e in excl_b if e in keep_a]
        moved_a = [e for e in excl_a if e not in keep_a]
        t = len(moved_b)

    gone_a, gone_b = set(moved_a), set(moved_b)
    new_a = sorted([e for e in a if e not in gone_a] + moved_b)
    new_b = sorted([e for e in b if e not in gone_b] + moved_a)
    outcome = TradeOutcome(index_a, index_b, tuple(excl_a), tuple(excl_b), n,
                           t, tuple(sorted(moved_a)), tuple(sorted(moved_b)))
    return new_a, new_b, outcome


def pair_extraction(p: PresenceLists, rng, mode=UNIFORM) -> TradeOutcome:
    """Draw two distinct lists of ``p`` uniformly and trade between them.

    ``p`` is updated in place.
    """
    n_lists = len(p.lists)
    if n_lists < 2:
        raise DegenerateMatrixError(
            "pair extraction needs at least two presence lists; a 1xC or Rx1 "
            "matrix has a single configuration")
    i = _randint(rng, 0, n_lists)
    j = _randint(rng, 0, n_lists - 1)
    if j >= i:
        j += 1
    new_a, new_b, outcome = perform_trade(p.lists[i], p.lists[j], rng, mode,
                                          index_a=i, index_b=j)
    p.lists[i] = new_a
    p.lists[j] = new_b
    return outcome


def default_extraction_count(m):
    """Conservative extraction count: ``max(1000, 5 * largest dimension)``."""
    shape = np.shape(m)
    return max(1000, 5 * max(shape))


def _run_csr(shape, orientation, indptr, indices, n_extractions, mode, seed):
    indices = indices.copy()
    if len(indptr) - 1 >= 2:
        rng = np.random.default_rng(seed)
        _kernels.trade_run(indptr, indices, n_extractions, rng,
                           mode == SHUFFLE, _NO_TRACK, False)
    return from_csr(shape, orientation, indptr, indices)


def randomize(m, cfg: RandomizerConfig = RandomizerConfig()) -> np.ndarray:
    """Return a randomized copy of ``m`` with identical margins.

    The result is a pure function of ``(m, cfg)``.  Matrices with fewer than
    two presence lists have exactly one configuration and come back as a
    copy.
    """
    m = check_binary_matrix(m)
    cfg = cfg.resolve(m)
    orientation, indptr, indices = to_csr(m)
    return _run_csr(m.shape, orientation, indptr, indices, cfg.n_extractions,
                    cfg.trade_count_mode, cfg.seed)


def randomize_reference(m, cfg: RandomizerConfig = RandomizerConfig()):
    """Pure-Python twin of :func:`randomize`; slow, but traceable."""
    from .matcore import from_presence_lists, to_presence_lists

    m = check_binary_matrix(m)
    cfg = cfg.resolve(m)
    p = to_presence_lists(m)
    if len(p.lists) < 2:
        return m.copy()
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.n_extractions):
        pair_extraction(p, rng, cfg.trade_count_mode)
    return from_presence_lists(p)


def batch_randomize(m, k, cfg: RandomizerConfig = RandomizerConfig(),
                    n_jobs=1):
    """Generate ``k`` independent nulls of ``m``.

    Null ``i`` is ``randomize(m, cfg)`` with the seed replaced by
    ``mix_seed(cfg.seed, i)``, so the output does not depend on ``n_jobs``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    m = check_binary_matrix(m)
    cfg = cfg.resolve(m)
    orientation, indptr, indices = to_csr(m)

    def one(i):
        return _run_csr(m.shape, orientation, indptr, indices,
                        cfg.n_extractions, cfg.trade_count_mode,
                        mix_seed(cfg.seed, i))

    if n_jobs == 1:
        return [one(i) for i in range(k)]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(one, range(k)))
