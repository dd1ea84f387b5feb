"""Compiled inner loops for pair extraction and swapping.

Both kernels draw from a ``numpy.random.Generator`` passed in by the caller.
Bounded integers are ``low + floor(random() * (high - low))``: one double per
draw, an order of magnitude cheaper than ``Generator.integers`` inside numba,
with a bias below ``(high - low) / 2**53``.  numba's ``Generator.random``
reproduces numpy's stream bit for bit, so the pure-Python reference path in
:mod:`fixedmargin.trader` consumes exactly the same draws and lands on
exactly the same matrices.

Draw order for one pair extraction over ``L`` lists, writing ``randint``
for the bounded draw above:

1. ``i = randint(0, L)``, ``j = randint(0, L - 1)``; ``j += 1`` if ``j >= i``.
2. Exclusive sets are collected in ascending element order.
3. If either exclusive set is empty, nothing else is drawn.
4. ``uniform_1_to_n``: ``t = randint(1, n + 1)``, then a partial
   Fisher-Yates pass of ``t`` steps over each exclusive set (``a`` first),
   step ``k`` drawing ``randint(k, size)``.
   ``shuffle_reassign``: the pool ``excl_a + excl_b`` gets a partial
   Fisher-Yates pass of ``len(excl_a)`` steps; the first ``len(excl_a)``
   pool slots go back to ``a``.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def randint(rng, low, high):
    return low + np.int64(rng.random() * (high - low))


@njit(cache=True, nogil=True)
def _sort_small(buf, n):
    if n > 32:
        buf[:n].sort()
        return
    for k in range(1, n):
        v = buf[k]
        q = k - 1
        while q >= 0 and buf[q] > v:
            buf[q + 1] = buf[q]
            q -= 1
        buf[q + 1] = v


@njit(cache=True, nogil=True)
def _flip_delta(orig, line, col, new_value):
    # change in "cells differing from orig" when a cell flips to new_value
    return 1 if orig[line, col] != new_value else -1


@njit(cache=True, nogil=True)
def _splice(indices, s0, s1, pos, n, incoming, mark, tmp, inc):
    # overwrite indices[pos[:n]] with incoming[:n], keeping indices[s0:s1] sorted
    for k in range(n):
        mark[pos[k] - s0] = 1
        inc[k] = incoming[k]
    _sort_small(inc, n)
    w = 0
    p = s0
    q = 0
    while p < s1 or q < n:
        if p < s1 and mark[p - s0]:
            mark[p - s0] = 0
            p += 1
            continue
        if q >= n or (p < s1 and indices[p] < inc[q]):
            tmp[w] = indices[p]
            p += 1
        else:
            tmp[w] = inc[q]
            q += 1
        w += 1
    indices[s0:s1] = tmp[:w]


@njit(cache=True, nogil=True)
def trade_run(indptr, indices, n_extractions, rng, shuffle, orig, track):
    """Run pair extractions in place on CSR presence lists.

    Returns ``(successes, diff_delta)``; ``diff_delta`` is the change in the
    number of cells differing from ``orig`` (only when ``track`` is set).
    """
    n_lists = indptr.shape[0] - 1
    longest = 0
    for k in range(n_lists):
        longest = max(longest, indptr[k + 1] - indptr[k])
    ea_val = np.empty(longest, np.int64)
    ea_pos = np.empty(longest, np.int64)
    eb_val = np.empty(longest, np.int64)
    eb_pos = np.empty(longest, np.int64)
    pool = np.empty(2 * longest, np.int64)
    src = np.empty(2 * longest, np.int8)
    mark = np.zeros(longest, np.uint8)
    tmp = np.empty(longest, np.int64)
    inc = np.empty(longest, np.int64)

    successes = 0
    diff = 0
    for _ in range(n_extractions):
        i = randint(rng, 0, n_lists)
        j = randint(rng, 0, n_lists - 1)
        if j >= i:
            j += 1
        a0, a1 = indptr[i], indptr[i + 1]
        b0, b1 = indptr[j], indptr[j + 1]

        na = 0
        nb = 0
        p = a0
        q = b0
        while p < a1 and q < b1:
            x = indices[p]
            y = indices[q]
            if x == y:
                p += 1
                q += 1
            elif x < y:
                ea_val[na] = x
                ea_pos[na] = p
                na += 1
                p += 1
            else:
                eb_val[nb] = y
                eb_pos[nb] = q
                nb += 1
                q += 1
        while p < a1:
            ea_val[na] = indices[p]
            ea_pos[na] = p
            na += 1
            p += 1
        while q < b1:
            eb_val[nb] = indices[q]
            eb_pos[nb] = q
            nb += 1
            q += 1

        n = min(na, nb)
        if n == 0:
            continue

        if not shuffle:
            t = randint(rng, 1, n + 1)
            for k in range(t):
                r = randint(rng, k, na)
                ea_val[k], ea_val[r] = ea_val[r], ea_val[k]
                ea_pos[k], ea_pos[r] = ea_pos[r], ea_pos[k]
            for k in range(t):
                r = randint(rng, k, nb)
                eb_val[k], eb_val[r] = eb_val[r], eb_val[k]
                eb_pos[k], eb_pos[r] = eb_pos[r], eb_pos[k]
            if track:
                for k in range(t):
                    va = ea_val[k]
                    vb = eb_val[k]
                    diff += _flip_delta(orig, i, va, 0)
                    diff += _flip_delta(orig, j, va, 1)
                    diff += _flip_delta(orig, i, vb, 1)
                    diff += _flip_delta(orig, j, vb, 0)
            _splice(indices, a0, a1, ea_pos, t, eb_val, mark, tmp, inc)
            _splice(indices, b0, b1, eb_pos, t, ea_val, mark, tmp, inc)
            successes += 1
        else:
            for k in range(na):
                pool[k] = ea_val[k]
                src[k] = 0
            for k in range(nb):
                pool[na + k] = eb_val[k]
                src[na + k] = 1
            total = na + nb
            for k in range(na):
                r = randint(rng, k, total)
                pool[k], pool[r] = pool[r], pool[k]
                src[k], src[r] = src[r], src[k]
            moved = 0
            for k in range(na):
                if src[k] == 1:
                    moved += 1
                    if track:
                        diff += _flip_delta(orig, i, pool[k], 1)
                        diff += _flip_delta(orig, j, pool[k], 0)
            if moved == 0:
                continue
            if track:
                for k in range(nb):
                    if src[na + k] == 0:
                        diff += _flip_delta(orig, i, pool[na + k], 0)
                        diff += _flip_delta(orig, j, pool[na + k], 1)
            _splice(indices, a0, a1, ea_pos, na, pool, mark, tmp, inc)
            _splice(indices, b0, b1, eb_pos, nb, pool[na:], mark, tmp, inc)
            successes += 1
    return successes, diff


@njit(cache=True, nogil=True)
def _try_swap(a, rng):
    n_rows, n_cols = a.shape
    r1 = randint(rng, 0, n_rows)
    r2 = randint(rng, 0, n_rows - 1)
    if r2 >= r1:
        r2 += 1
    c1 = randint(rng, 0, n_cols)
    c2 = randint(rng, 0, n_cols - 1)
    if c2 >= c1:
        c2 += 1
    x = a[r1, c1]
    if x == a[r2, c2] and a[r1, c2] == a[r2, c1] and x != a[r1, c2]:
        a[r1, c1] = 1 - x
        a[r2, c2] = 1 - x
        a[r1, c2] = x
        a[r2, c1] = x
        return True, r1, r2, c1, c2
    return False, r1, r2, c1, c2


@njit(cache=True, nogil=True)
def swap_attempts(a, n_attempts, rng, orig, track):
    """Attempt ``n_attempts`` swaps in place; returns ``(successes, diff_delta)``."""
    successes = 0
    diff = 0
    for _ in range(n_attempts):
        ok, r1, r2, c1, c2 = _try_swap(a, rng)
        if ok:
            successes += 1
            if track:
                diff += _flip_delta(orig, r1, c1, a[r1, c1])
                diff += _flip_delta(orig, r2, c2, a[r2, c2])
                diff += _flip_delta(orig, r1, c2, a[r1, c2])
                diff += _flip_delta(orig, r2, c1, a[r2, c1])
    return successes, diff


@njit(cache=True, nogil=True)
def swap_until(a, n_successes, max_attempts, rng):
    """Attempt swaps until ``n_successes`` succeed; returns ``(successes, attempts)``."""
    successes = 0
    attempts = 0
    while successes < n_successes and attempts < max_attempts:
        ok, _, _, _, _ = _try_swap(a, rng)
        attempts += 1
        if ok:
            successes += 1
    return successes, attempts


@njit(cache=True, nogil=True)
def diff_count(indptr, indices, orig_oriented):
    """Cells where CSR presence lists disagree with a dense oriented matrix."""
    overlap = 0
    n_lists = indptr.shape[0] - 1
    for k in range(n_lists):
        for p in range(indptr[k], indptr[k + 1]):
            overlap += orig_oriented[k, indices[p]]
    ones = 0
    for k in range(orig_oriented.shape[0]):
        for c in range(orig_oriented.shape[1]):
            ones += orig_oriented[k, c]
    return ones + indices.shape[0] - 2 * overlap
