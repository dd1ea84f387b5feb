"""Checkerboard units, perturbation degree and empirical p-values."""
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from ._validation import check_binary_matrix
from .swapper import is_checkerboard

GREATER = "greater"
LESS = "less"
TWO_SIDED = "two_sided"

# rows per block of the Gram product; bounds memory at ~_BLOCK * n_rows doubles
_BLOCK = 512


@dataclass(frozen=True)
class CheckerboardReport:
    total: int
    per_pair: Optional[dict] = None


def cu_pair(row_i, row_j):
    """Checkerboard units between two rows: ``(R_i - S) * (R_j - S)``.

    ``S`` is the number of shared 1-columns, taken as the popcount of the
    bitwise AND of the packed rows.
    """
    a = np.asarray(row_i, dtype=np.uint8).ravel()
    b = np.asarray(row_j, dtype=np.uint8).ravel()
    if a.shape != b.shape:
        raise ValueError(f"row lengths differ: {a.size} vs {b.size}")
    pa, pb = np.packbits(a), np.packbits(b)
    r_i = int(np.bitwise_count(pa).sum())
    r_j = int(np.bitwise_count(pb).sum())
    shared = int(np.bitwise_count(pa & pb).sum())
    return (r_i - shared) * (r_j - shared)


def total_checkerboards(m):
    """Sum of :func:`cu_pair` over all unordered row pairs."""
    m = check_binary_matrix(m)
    n_rows = m.shape[0]
    if n_rows < 2:
        return 0
    x = m.astype(np.float64)
    r = m.sum(axis=1, dtype=np.int64)
    total = 0
    for start in range(0, n_rows, _BLOCK):
        stop = min(start + _BLOCK, n_rows)
        # shared counts are exact in float64 for any realistic column count
        shared = (x[start:stop] @ x.T).astype(np.int64)
        only_i = r[start:stop, None] - shared
        only_j = r[None, :] - shared
        cu = only_i * only_j
        # keep pairs (i, j) with j > i
        cols = np.arange(n_rows)
        rows = np.arange(start, stop)[:, None]
        total += int(cu[cols[None, :] > rows].sum())
    return total


def checkerboard_report(m, per_pair=False):
    m = check_binary_matrix(m)
    if not per_pair:
        return CheckerboardReport(total_checkerboards(m))
    pairs = {(i, j): cu_pair(m[i], m[j])
             for i, j in combinations(range(m.shape[0]), 2)}
    return CheckerboardReport(sum(pairs.values()), pairs)


def brute_force_checkerboards(m):
    """Count checkerboard 2x2 submatrices by scanning every row and column pair."""
    m = check_binary_matrix(m).tolist()
    n_rows, n_cols = len(m), len(m[0])
    count = 0
    for r1, r2 in combinations(range(n_rows), 2):
        for c1, c2 in combinations(range(n_cols), 2):
            if is_checkerboard(((m[r1][c1], m[r1][c2]),
                                (m[r2][c1], m[r2][c2]))):
                count += 1
    return count


def perturbation(original, other):
    """Percentage of cells whose value differs between two matrices."""
    a = check_binary_matrix(original)
    b = check_binary_matrix(other)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return 100.0 * int(np.count_nonzero(a != b)) / a.size


def empirical_p(observed, nulls, tail=GREATER):
    """Monte Carlo p-value with the observation counted among the nulls."""
    nulls = np.asarray(nulls, dtype=float).ravel()
    k = nulls.size
    if k == 0:
        raise ValueError("empirical_p needs at least one null value")
    greater = (1 + int(np.count_nonzero(nulls >= observed))) / (k + 1)
    less = (1 + int(np.count_nonzero(nulls <= observed))) / (k + 1)
    if tail == GREATER:
        return greater
    if tail == LESS:
        return less
    if tail == TWO_SIDED:
        return min(1.0, 2.0 * min(greater, less))
    raise ValueError(f"unknown tail {tail!r}")
