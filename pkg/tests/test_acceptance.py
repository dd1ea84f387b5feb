"""Acceptance criteria, each at its stated tolerance.

Every test records a one-line verdict before asserting; the lines are
printed again in the terminal summary.  Seeds are fixed once here and were
not tuned against the outcomes.
"""
import time

import numpy as np
import pytest

from fixedmargin import _kernels
from fixedmargin.labkit import (SWAP, TRADE, chi2_sf, convergence_experiment,
                                count_configurations, enumerate_margin_fixed,
                                exact_mean_checkerboards, first_reaching,
                                gen_low_checkerboard, gen_random_fill,
                                perturbation_curve, stability_detect,
                                success_rate_curve, uniformity_experiment)
from fixedmargin.matcore import margins
from fixedmargin.metrics import brute_force_checkerboards, total_checkerboards
from fixedmargin.swapper import (SwapConfig, independent_swap,
                                 recommended_swap_count,
                                 sequential_swap_ensemble)
from fixedmargin.trader import RandomizerConfig, mix_seed, randomize

from conftest import ACCEPTANCE_RESULTS, SMALL_MARGINS, random_matrix

SEED = 20240601


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_RESULTS[number] = line
    print(line)
    return ok


def test_criterion_01_small3_enumeration():
    t0 = time.perf_counter()
    configs = enumerate_margin_fixed(SMALL_MARGINS)
    elapsed = time.perf_counter() - t0
    ok = len(configs) == 5 and elapsed < 0.1
    assert report(1, ok, f"{len(configs)} configurations in {elapsed:.4f} s "
                         f"(need 5, < 0.1 s)")


def test_criterion_02_uniformity_small_matrix():
    m = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.uint8)
    t0 = time.perf_counter()
    p_values = []
    for rep in range(100):
        cfg = RandomizerConfig(100, seed=mix_seed(SEED, rep))
        _, res = uniformity_experiment(m, 1000, cfg)
        p_values.append(res.p_value)
    elapsed = time.perf_counter() - t0
    mean_p = float(np.mean(p_values))
    low = sum(p < 0.01 for p in p_values)
    ok = 0.45 <= mean_p <= 0.80 and low <= 3 and elapsed < 30
    assert report(2, ok, f"mean p {mean_p:.3f} (need [0.45, 0.80]), "
                         f"{low}/100 reps with p < 0.01 (need <= 3), "
                         f"{elapsed:.1f} s (need < 30 s)")


@pytest.mark.slow
def test_criterion_03_low_checkerboard_ensemble():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    p_values, sizes = [], []
    for j in range(20):
        m, _ = gen_low_checkerboard(rng)
        cfg = RandomizerConfig(10000, seed=mix_seed(SEED, 1000 + j))
        census, res = uniformity_experiment(m, 1000, cfg, n_jobs=4,
                                            warn=False)
        p_values.append(res.p_value)
        sizes.append(census.total_configs)
    elapsed = time.perf_counter() - t0
    ok = (min(p_values) >= 0.01 and float(np.mean(p_values)) >= 0.35
          and elapsed < 300)
    assert report(3, ok, f"min p {min(p_values):.3f} (need >= 0.01), "
                         f"mean p {np.mean(p_values):.3f} (need >= 0.35), "
                         f"configurations {min(sizes)}..{max(sizes)}, "
                         f"{elapsed:.1f} s (need < 300 s)")


def test_criterion_04_margin_preservation():
    rng = np.random.default_rng(SEED)
    failures = {"trade": 0, "seqswap": 0, "indswap": 0}
    no_checkerboard = 0
    for case in range(1000):
        m = random_matrix(rng, 50, 50, rng.uniform(0.05, 0.95))
        seed = int(rng.integers(0, 2**63))
        mg = margins(m)
        if margins(randomize(m, RandomizerConfig(seed=seed))) != mg:
            failures["trade"] += 1
        if min(m.shape) < 2:
            continue
        scfg = SwapConfig(2000, 2000, seed=seed)
        if margins(independent_swap(m, scfg)) != mg:
            failures["indswap"] += 1
        if total_checkerboards(m) == 0:
            # the sequential chain cannot take a single successful swap
            no_checkerboard += 1
            continue
        if any(margins(x) != mg for x in sequential_swap_ensemble(m, 5, scfg)):
            failures["seqswap"] += 1
    ok = sum(failures.values()) == 0
    assert report(4, ok, f"failures {failures} over 1000 cases (need 0); "
                         f"{no_checkerboard} cases without checkerboards "
                         f"skipped for sequential swap")


def test_criterion_05_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    failures = 0
    for _ in range(500):
        m = random_matrix(rng, 15, 15)
        failures += total_checkerboards(m) != brute_force_checkerboards(m)
    assert report(5, failures == 0, f"{failures}/500 mismatches (need 0)")


def test_criterion_06_perturbation_plateau():
    t0 = time.perf_counter()
    m = gen_random_fill(100, 100, 0.5, SEED)
    trade = perturbation_curve(m, TRADE, 500, 1, mix_seed(SEED, 1))
    swap = perturbation_curve(m, SWAP, 200000, 100, mix_seed(SEED, 2))
    trade_peak = max(trade.mean)
    swap_at_1000 = swap.mean[swap.x.index(1000)]
    # plateau: mean of the last fifth of the run; reached when within 2 points
    tail = np.mean(swap.mean[len(swap.mean) * 4 // 5:])
    swap_reach = first_reaching(swap, tail - 2.0)
    elapsed = time.perf_counter() - t0
    ok = (trade_peak >= 48 and swap_at_1000 < 40 and swap_reach is not None
          and swap_reach >= 20000 and elapsed < 60)
    trade_at = first_reaching(trade, 48)
    assert report(6, ok, f"trade max {trade_peak:.1f}% within 500 extractions "
                         f"(>= 48% first at {trade_at}), swap {swap_at_1000:.1f}% "
                         f"after 1000 attempts (need < 40%), swap plateau "
                         f"{tail:.1f}% reached at {swap_reach} attempts "
                         f"(need >= 20000), {elapsed:.1f} s")


def test_criterion_07_success_rates():
    t0 = time.perf_counter()
    lines, ok = [], True
    for k, fill in enumerate((0.1, 0.3, 0.5, 0.7, 0.9)):
        m = gen_random_fill(100, 100, fill, mix_seed(SEED, k))
        trade = success_rate_curve(m, TRADE, 10**6, mix_seed(SEED, 10 + k),
                                   stride=10**6)
        swap = success_rate_curve(m, SWAP, 10**6, mix_seed(SEED, 20 + k),
                                  stride=10**6)
        trade_frac = trade.mean[-1] / 10**6
        per_success = 10**6 / swap.mean[-1]
        ok &= trade_frac >= 0.99
        if fill == 0.5:
            ok &= 6 <= per_success <= 10
        elif fill in (0.1, 0.9):
            ok &= 40 <= per_success <= 90
        lines.append(f"f={fill}: swap {per_success:.1f}/success, "
                     f"trade {trade_frac:.5f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 120
    assert report(7, ok, "; ".join(lines) + f" ({elapsed:.1f} s)")


@pytest.mark.slow
def test_criterion_08_plateau_correctness():
    rng = np.random.default_rng(SEED)
    results = []
    while len(results) < 10:
        m = gen_random_fill(int(rng.integers(4, 7)), int(rng.integers(4, 7)),
                            float(rng.uniform(0.3, 0.7)), rng)
        n_configs = count_configurations(margins(m), limit=10**4 + 1)
        if not 2 <= n_configs <= 10**4:
            continue
        exact = exact_mean_checkerboards(m, limit=10**4)
        series = convergence_experiment(m, 1000, range(0, 2001, 100),
                                        seed=mix_seed(SEED, len(results)))
        start = stability_detect(series, window=5, rel_tol=0.05)
        first = series.x.index(start) if start is not None else 0
        # pool the independent plateau points
        means = np.array(series.mean[max(first, 1):])
        ses = np.array(series.dispersion[max(first, 1):])
        plateau = float(means.mean())
        se = float(np.sqrt((ses ** 2).sum()) / len(means))
        results.append((abs(plateau - exact) / se, plateau, exact))
    worst = max(r[0] for r in results)
    ok = worst <= 2
    detail = ", ".join(f"{p:.2f}/{e:.2f}" for _, p, e in results)
    assert report(8, ok, f"max |plateau - exact| = {worst:.2f} SE (need <= 2); "
                         f"plateau/exact: {detail}")


def test_criterion_09_chi_square_numerics():
    stats = pytest.importorskip("scipy.stats")
    worst = 0.0
    for df in range(1, 21):
        for k in range(201):
            x = k / 2
            worst = max(worst, abs(chi2_sf(x, df) - stats.chi2.sf(x, df)))
    assert report(9, worst <= 1e-8, f"max |p - reference| = {worst:.2e} "
                                     f"(need <= 1e-8)")


def test_criterion_10_throughput_soft():
    m = gen_random_fill(2000, 2000, 0.5, SEED)
    randomize(m[:10, :10], RandomizerConfig(10, seed=0))   # compile
    t0 = time.perf_counter()
    out = randomize(m, RandomizerConfig(seed=SEED))
    elapsed = time.perf_counter() - t0
    ok = elapsed < 2.0
    report(10, ok, f"2000x2000 default randomization in {elapsed:.2f} s "
                   f"(target < 2 s; soft, reported only)")
    assert margins(out) == margins(m)


def test_criterion_11_desk_scale_note():
    ACCEPTANCE_RESULTS[11] = ("SKIP criterion 11: field datasets are not "
                              "available; criterion 8 checks the same "
                              "convergence claim against exact enumeration")
    pytest.skip("field datasets absent; covered by criterion 8")
