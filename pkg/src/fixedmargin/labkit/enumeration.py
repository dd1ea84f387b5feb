"""Exact enumeration of 0/1 matrices with prescribed margins."""
from itertools import combinations

import numpy as np

from .._validation import check_binary_matrix
from ..exceptions import EnumerationOverflowError

DEFAULT_LIMIT = 10**6


def canonical_key(m):
    """Hashable key equal for equal matrices: shape plus row-major packed bits."""
    m = check_binary_matrix(m)
    return (m.shape, np.packbits(m, axis=None).tobytes())


def gale_ryser(row_totals, col_totals):
    """True if some 0/1 matrix has these row and column totals."""
    rows = sorted((int(r) for r in row_totals), reverse=True)
    cols = [int(c) for c in col_totals]
    if sum(rows) != sum(cols) or any(v < 0 for v in rows + cols):
        return False
    if rows and rows[0] > len(cols):
        return False
    if cols and max(cols) > len(rows):
        return False
    running = 0
    for k, r in enumerate(rows, start=1):
        running += r
        if running > sum(min(c, k) for c in cols):
            return False
    return True


def enumerate_margin_fixed(margins, limit=DEFAULT_LIMIT):
    """All 0/1 matrices with the given margins, in ascending row-major bit order.

    Rows are filled one at a time; after each row the residual margins are
    checked with the Gale-Ryser condition, so every partial matrix kept
    extends to at least one solution.  Raises
    :class:`~fixedmargin.exceptions.EnumerationOverflowError` once more than
    ``limit`` configurations exist.  Infeasible margins give an empty list.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    rows, cols = (list(map(int, v)) for v in margins)
    n_rows, n_cols = len(rows), len(cols)
    if not gale_ryser(rows, cols):
        return []

    found = []
    current = np.zeros((n_rows, n_cols), dtype=np.uint8)
    col_left = list(cols)

    def row_patterns(i):
        rows_after = n_rows - i - 1
        forced = [j for j in range(n_cols) if col_left[j] > rows_after]
        free = [j for j in range(n_cols)
                if 0 < col_left[j] <= rows_after]
        need = rows[i] - len(forced)
        if need < 0 or need > len(free):
            return
        # combinations() walks descending bit patterns; reverse for ascending
        for extra in reversed(list(combinations(free, need))):
            yield sorted(forced + list(extra))

    def fill(i):
        if i == n_rows:
            if len(found) >= limit:
                raise EnumerationOverflowError(limit, len(found))
            found.append(current.copy())
            return
        for chosen in row_patterns(i):
            for j in chosen:
                col_left[j] -= 1
            if gale_ryser(rows[i + 1:], col_left):
                current[i, chosen] = 1
                fill(i + 1)
                current[i, chosen] = 0
            for j in chosen:
                col_left[j] += 1

    fill(0)
    return found


def count_configurations(margins, limit=DEFAULT_LIMIT):
    return len(enumerate_margin_fixed(margins, limit))
