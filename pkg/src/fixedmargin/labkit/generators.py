"""Random test-matrix generators."""
import numpy as np

from .._validation import check_fill
from ..metrics import total_checkerboards


class GeneratorExhaustedError(RuntimeError):
    pass


def gen_random_fill(n_rows, n_cols, fill, rng=None):
    """Matrix whose cells are independently 1 with probability ``fill``."""
    fill = check_fill(fill)
    if n_rows < 1 or n_cols < 1:
        raise ValueError("dimensions must be positive")
    rng = np.random.default_rng(rng)
    return (rng.random((n_rows, n_cols)) < fill).astype(np.uint8)


def _addition_deltas(m, row_totals):
    # only[i, j] = R_i - S_ij; adding a 1 at (i, c) lowers the CU of pairs
    # (i, j) with m[j, c] == 1 by only[i, j] and raises the CU of pairs with
    # m[j, c] == 0 by only[j, i]
    x = m.astype(np.int64)
    only = row_totals[:, None] - x @ x.T
    return only.T @ (1 - x) - only @ x


def _covered(m):
    return m.any(axis=1).all() and m.any(axis=0).all()


def gen_low_checkerboard(rng=None, size_range=(5, 15), cb_range=(1, 5),
                         max_cell_trials=10**6, max_restarts=100):
    """Matrix with few checkerboards, hence few alternative configurations.

    Draws a shape (each side uniform on ``size_range``) and a ceiling ``k``
    (uniform on ``cb_range``), then switches on random 0-cells one at a time,
    skipping any cell that would push the checkerboard total above ``k``,
    until every row and column holds a presence.  Returns ``(m, k)`` with
    ``1 <= total_checkerboards(m) <= k``.

    Repeatedly trying uniform random cells and reverting the rejected ones is
    the same, in distribution, as picking uniformly among the cells that can
    be switched on; this does the latter directly and restarts if no such
    cell remains (or the finished matrix has no checkerboard at all).
    """
    rng = np.random.default_rng(rng)
    lo, hi = size_range
    for _ in range(max_restarts):
        n_rows = int(rng.integers(lo, hi + 1))
        n_cols = int(rng.integers(lo, hi + 1))
        k = int(rng.integers(cb_range[0], cb_range[1] + 1))
        m = np.zeros((n_rows, n_cols), dtype=np.uint8)
        current = 0
        trials = 0
        while not _covered(m) and trials < max_cell_trials:
            row_totals = m.sum(axis=1, dtype=np.int64)
            delta = _addition_deltas(m, row_totals)
            addable = np.flatnonzero((m == 0) & (current + delta <= k))
            if addable.size == 0:
                break
            cell = int(addable[rng.integers(0, addable.size)])
            i, c = divmod(cell, n_cols)
            m[i, c] = 1
            current += int(delta[i, c])
            trials += 1
        if _covered(m) and current >= 1:
            assert current == total_checkerboards(m)
            return m, k
    raise GeneratorExhaustedError(
        f"no low-checkerboard matrix found after {max_restarts} restarts")
