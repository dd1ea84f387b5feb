"""Experiment drivers: uniformity census, convergence, perturbation, success rate, timing."""
import csv
import io
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .. import _kernels
from .._validation import check_binary_matrix
from ..exceptions import MarginViolationError
from ..matcore import margins, oriented, to_csr
from ..metrics import total_checkerboards
from ..trader import (SHUFFLE, UNIFORM, RandomizerConfig, batch_randomize,
                      mix_seed)
from .chisq import ChiSquareResult, chi_square_uniform
from .enumeration import DEFAULT_LIMIT, canonical_key, enumerate_margin_fixed

TRADE = "trade"
SWAP = "swap"
ALGORITHMS = (TRADE, SWAP)


@dataclass
class ExperimentSeries:
    x: Sequence
    mean: Sequence
    dispersion: Optional[Sequence] = None
    label: str = ""

    def __post_init__(self):
        self.x = list(self.x)
        self.mean = list(self.mean)
        if len(self.x) != len(self.mean):
            raise ValueError("x and mean differ in length")
        if self.dispersion is not None:
            self.dispersion = list(self.dispersion)
            if len(self.dispersion) != len(self.x):
                raise ValueError("dispersion and x differ in length")

    def __len__(self):
        return len(self.x)

    def to_csv(self, fh=None):
        """Write ``x,mean[,dispersion]`` rows; returns the text if ``fh`` is None."""
        out = io.StringIO() if fh is None else fh
        writer = csv.writer(out, lineterminator="\n")
        header = ["x", "mean"]
        if self.dispersion is not None:
            header.append("dispersion")
        writer.writerow(header)
        for k, (x, y) in enumerate(zip(self.x, self.mean)):
            row = [_fmt(x), _fmt(y)]
            if self.dispersion is not None:
                row.append(_fmt(self.dispersion[k]))
            writer.writerow(row)
        if fh is None:
            return out.getvalue()
        return None


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


@dataclass
class ConfigurationCensus:
    total_configs: int
    frequencies: dict
    expected_per_config: float
    configurations: list = field(default_factory=list, repr=False)

    @property
    def counts(self):
        return list(self.frequencies.values())


def uniformity_experiment(m, k_nulls, cfg: RandomizerConfig = RandomizerConfig(),
                          limit=DEFAULT_LIMIT, n_jobs=1, warn=True):
    """Bin ``k_nulls`` trade nulls of ``m`` over every feasible configuration.

    The chi-square runs over all enumerated configurations, unobserved ones
    included.  A single-configuration matrix yields a degenerate result
    (``df == 0``, ``p_value == 1``).
    """
    m = check_binary_matrix(m)
    configs = enumerate_margin_fixed(margins(m), limit)
    freq = {canonical_key(c): 0 for c in configs}
    for null in batch_randomize(m, k_nulls, cfg, n_jobs=n_jobs):
        key = canonical_key(null)
        if key not in freq:
            raise MarginViolationError(
                "null matrix outside the enumerated configuration set")
        freq[key] += 1
    census = ConfigurationCensus(len(configs), freq, k_nulls / len(configs),
                                 configs)
    if len(configs) == 1:
        return census, ChiSquareResult(0.0, 0, 1.0, degenerate=True)
    return census, chi_square_uniform(census.counts, warn=warn)


def exact_mean_checkerboards(m, limit=DEFAULT_LIMIT):
    """Mean checkerboard total over all configurations sharing the margins of ``m``."""
    configs = enumerate_margin_fixed(margins(m), limit)
    return float(np.mean([total_checkerboards(c) for c in configs]))


def arithmetic_schedule(start, stop, step):
    """Inclusive arithmetic progression ``start, start + step, ..., <= stop``."""
    if start < 0 or step < 1 or stop < start:
        raise ValueError("schedule needs 0 <= start <= stop and step >= 1")
    return list(range(start, stop + 1, step))


def convergence_experiment(m, set_size, schedule, seed=0, mode=UNIFORM,
                           n_jobs=1):
    """Mean checkerboard total of ``set_size`` nulls per extraction count.

    ``schedule`` is an iterable of extraction counts (see
    :func:`arithmetic_schedule`).  ``dispersion`` holds the standard error of
    each mean.  Each schedule point draws its nulls from its own derived seed.
    """
    m = check_binary_matrix(m)
    xs, means, ses = [], [], []
    for point, n in enumerate(schedule):
        n = int(n)
        if n == 0:
            values = np.full(set_size, total_checkerboards(m), dtype=float)
        else:
            cfg = RandomizerConfig(n, mode, mix_seed(seed, point))
            values = np.array([total_checkerboards(x) for x in
                               batch_randomize(m, set_size, cfg, n_jobs)],
                              dtype=float)
        xs.append(n)
        means.append(float(values.mean()))
        se = values.std(ddof=1) / np.sqrt(set_size) if set_size > 1 else 0.0
        ses.append(float(se))
    return ExperimentSeries(xs, means, ses, label="convergence")


def stability_detect(series, window=100, rel_tol=0.01):
    """First ``x`` whose mean is matched within ``rel_tol`` by the next ``window`` points.

    The window starts at the candidate point itself.  Returns None when no
    window qualifies.
    """
    mean = np.asarray(series.mean, dtype=float)
    if window < 1:
        raise ValueError("window must be >= 1")
    for start in range(0, len(mean) - window + 1):
        ref = mean[start]
        block = mean[start:start + window]
        if np.all(np.abs(block - ref) <= rel_tol * abs(ref)):
            return series.x[start]
    return None


def first_reaching(series, threshold):
    """First ``x`` at which the series mean is at least ``threshold``; None if never."""
    for x, y in zip(series.x, series.mean):
        if y >= threshold:
            return x
    return None


class _Runner:
    """Applies trade or swap operations to a working copy of ``m``."""

    def __init__(self, m, algorithm, rng, mode=UNIFORM):
        if algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        self.algorithm = algorithm
        self.rng = np.random.default_rng(rng)
        self.shuffle = mode == SHUFFLE
        self.n_cells = m.size
        if algorithm == TRADE:
            orientation, self.indptr, indices = to_csr(m)
            self.indices = indices.copy()
            self.orig = np.ascontiguousarray(oriented(m, orientation))
            self.degenerate = len(self.indptr) - 1 < 2
        else:
            if min(m.shape) < 2:
                raise ValueError("swaps need at least a 2x2 matrix")
            self.work = m.copy()
            self.orig = m
            self.degenerate = False
        self.diff = 0

    def run(self, n_ops, track=True):
        """Apply ``n_ops`` operations; returns the number that changed the matrix."""
        if n_ops <= 0 or self.degenerate:
            return 0
        if self.algorithm == TRADE:
            ok, delta = _kernels.trade_run(self.indptr, self.indices, n_ops,
                                           self.rng, self.shuffle, self.orig,
                                           track)
        else:
            ok, delta = _kernels.swap_attempts(self.work, n_ops, self.rng,
                                               self.orig, track)
        self.diff += delta
        return int(ok)

    def recount(self):
        if self.algorithm == TRADE:
            self.diff = int(_kernels.diff_count(self.indptr, self.indices,
                                                self.orig))
        else:
            self.diff = int(np.count_nonzero(self.work != self.orig))
        return self.diff

    @property
    def perturbation(self):
        return 100.0 * self.diff / self.n_cells


def _samples(max_ops, stride):
    if stride < 1 or max_ops < stride:
        raise ValueError("need max_ops >= stride >= 1")
    return range(0, max_ops + 1, stride)


def perturbation_curve(m, algorithm, max_ops, stride, rng=None, mode=UNIFORM):
    """Percentage of cells differing from ``m`` every ``stride`` operations.

    Swap operations are attempts, successful or not.
    """
    m = check_binary_matrix(m)
    runner = _Runner(m, algorithm, rng, mode)
    xs, ys = [], []
    done = 0
    for x in _samples(max_ops, stride):
        runner.run(x - done)
        done = x
        xs.append(x)
        ys.append(runner.perturbation)
    return ExperimentSeries(xs, ys, label=f"perturbation_{algorithm}")


def success_rate_curve(m, algorithm, n_attempts, rng=None, stride=None,
                       mode=UNIFORM):
    """Cumulative number of operations that changed the matrix, per attempt count."""
    m = check_binary_matrix(m)
    if n_attempts < 1:
        raise ValueError("n_attempts must be >= 1")
    stride = stride or max(1, n_attempts // 100)
    runner = _Runner(m, algorithm, rng, mode)
    xs, ys = [0], [0]
    done = successes = 0
    while done < n_attempts:
        step = min(stride, n_attempts - done)
        successes += runner.run(step, track=False)
        done += step
        xs.append(done)
        ys.append(successes)
    return ExperimentSeries(xs, ys, label=f"success_{algorithm}")


def timing_curve(m, algorithm, max_ops, stride, rng=None, mode=UNIFORM):
    """Perturbation against cumulative kernel wall-clock seconds.

    Only the operations themselves are timed; measuring the perturbation
    between chunks is excluded.
    """
    m = check_binary_matrix(m)
    # compile outside the clock, with a throwaway generator
    _Runner(m, algorithm, np.random.default_rng(0), mode).run(1, track=False)
    runner = _Runner(m, algorithm, rng, mode)
    elapsed = 0.0
    xs, ys = [], []
    done = 0
    for x in _samples(max_ops, stride):
        t0 = time.perf_counter()
        runner.run(x - done, track=False)
        elapsed += time.perf_counter() - t0
        done = x
        xs.append(elapsed)
        ys.append(100.0 * runner.recount() / runner.n_cells)
    return ExperimentSeries(xs, ys, label=f"timing_{algorithm}")
