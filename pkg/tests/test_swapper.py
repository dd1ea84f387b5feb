import numpy as np
import pytest

from fixedmargin.exceptions import NoSwapPossibleError
from fixedmargin.labkit import canonical_key, gen_random_fill
from fixedmargin.matcore import margins
from fixedmargin.swapper import (SUCCESSFUL, SwapConfig, attempt_swap,
                                 estimate_attempts_per_success,
                                 independent_swap, is_checkerboard,
                                 recommended_swap_count,
                                 sequential_swap_ensemble)

from conftest import random_matrix


@pytest.mark.parametrize("sub, expected", [
    (((0, 1), (1, 0)), True),
    (((1, 0), (0, 1)), True),
    (((1, 1), (1, 0)), False),
    (((0, 0), (0, 0)), False),
    (((1, 1), (0, 0)), False),
])
def test_is_checkerboard(sub, expected):
    assert is_checkerboard(sub) is expected


def test_attempt_swap_identity(identity2):
    rng = np.random.default_rng(0)
    m = identity2.copy()
    assert attempt_swap(m, rng)
    assert m.tolist() == [[0, 1], [1, 0]]
    # flipping the same quadruple twice restores the matrix
    assert attempt_swap(m, rng)
    assert np.array_equal(m, identity2)


def test_attempt_swap_all_ones_never_succeeds():
    rng = np.random.default_rng(1)
    m = np.ones((4, 5), dtype=np.uint8)
    assert not any(attempt_swap(m, rng) for _ in range(500))
    assert m.all()


def test_attempt_swap_rejects_small():
    with pytest.raises(ValueError):
        attempt_swap(np.ones((1, 4), dtype=np.uint8), np.random.default_rng())


def test_attempt_swap_success_rate_half_fill():
    rng = np.random.default_rng(2)
    m = gen_random_fill(100, 100, 0.5, rng)
    hits = sum(attempt_swap(m, rng) for _ in range(100000))
    assert 8 * 0.9 < 100000 / hits < 8 * 1.1


def test_sequential_consecutive_nulls_differ_in_four_cells(small3_matrix):
    nulls = sequential_swap_ensemble(small3_matrix, 50, SwapConfig(1000, seed=3))
    for a, b in zip(nulls, nulls[1:]):
        assert np.count_nonzero(a != b) == 4
        assert margins(b) == margins(small3_matrix)


def test_sequential_all_ones_raises():
    with pytest.raises(NoSwapPossibleError):
        sequential_swap_ensemble(np.ones((3, 3), dtype=np.uint8), 2)


def test_sequential_swap_is_biased(small3_matrix, small3_configs):
    # the long-run chain visits configurations unevenly
    from scipy.stats import chisquare

    nulls = sequential_swap_ensemble(small3_matrix, 20000, SwapConfig(1000, seed=4))
    keys = {canonical_key(c): 0 for c in small3_configs}
    for m in nulls:
        keys[canonical_key(m)] += 1
    assert chisquare(list(keys.values())).pvalue < 1e-6


def test_independent_swap_zero_is_copy(small3_matrix):
    out = independent_swap(small3_matrix, SwapConfig(n_swaps=0))
    assert np.array_equal(out, small3_matrix) and out is not small3_matrix


def test_independent_swap_successful_needs_checkerboard():
    with pytest.raises(NoSwapPossibleError):
        independent_swap(np.ones((3, 3), dtype=np.uint8),
                         SwapConfig(n_swaps=5, count_mode=SUCCESSFUL))


def test_swaps_preserve_margins():
    rng = np.random.default_rng(5)
    for _ in range(300):
        m = random_matrix(rng, 30, 30, rng.uniform(0.05, 0.95))
        if min(m.shape) < 2:
            continue
        out = independent_swap(m, SwapConfig(n_swaps=int(rng.integers(0, 2000)),
                                             seed=int(rng.integers(0, 2**32))))
        assert margins(out) == margins(m)


@pytest.mark.parametrize("fill, expected", [
    (0.5, 8.0),
    (0.3, 1 / (2 * 0.09 * 0.49)),   # 11.34
    (0.9, 1 / (2 * 0.81 * 0.01)),   # 61.73
    (0.1, 1 / (2 * 0.01 * 0.81)),
])
def test_estimate_attempts_per_success(fill, expected):
    assert estimate_attempts_per_success(fill) == pytest.approx(expected)


def test_estimate_matches_derived_values():
    assert estimate_attempts_per_success(0.3) == pytest.approx(11.3, abs=0.05)
    assert estimate_attempts_per_success(0.9) == pytest.approx(61.7, abs=0.05)


@pytest.mark.parametrize("f", np.linspace(0.01, 0.99, 25))
def test_estimate_symmetric(f):
    assert estimate_attempts_per_success(f) == pytest.approx(
        estimate_attempts_per_success(1 - f))


@pytest.mark.parametrize("fill", [0.0, 1.0, -0.1, 1.5])
def test_estimate_rejects_closed_interval(fill):
    with pytest.raises(ValueError):
        estimate_attempts_per_success(fill)


def test_recommended_swap_count():
    m = np.zeros((100, 100), dtype=np.uint8)
    m[:, :50] = 1   # fill exactly 0.5, 5000 presences
    assert recommended_swap_count(m) == 2 * 5000 * 8


def test_recommended_swap_count_large_matrix():
    # 10^4 x 10^4 at 50% fill: 2 * 5e7 presences * 8 attempts
    presences = 5 * 10**7
    assert 2 * presences * estimate_attempts_per_success(0.5) == 8 * 10**8


@pytest.mark.parametrize("m", [np.zeros((3, 3)), np.ones((3, 3))])
def test_recommended_swap_count_rejects_trivial_fill(m):
    with pytest.raises(ValueError):
        recommended_swap_count(m.astype(np.uint8))


@pytest.mark.parametrize("fill", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_empirical_attempts_match_estimate(fill):
    from fixedmargin import _kernels

    rng = np.random.default_rng(6)
    m = gen_random_fill(100, 100, fill, rng)
    hits, _ = _kernels.swap_attempts(m, 10**6, rng, m, False)
    ratio = 10**6 / hits
    assert ratio == pytest.approx(estimate_attempts_per_success(fill), rel=0.25)
