import math
from fractions import Fraction

import pytest
from scipy import special, stats

from fixedmargin.labkit import (LowExpectedCountWarning, chi2_sf,
                                chi_square_uniform, gammainc_lower,
                                gammainc_upper)


def test_perfectly_uniform():
    res = chi_square_uniform([200] * 5)
    assert res.statistic == 0 and res.df == 4 and res.p_value == 1.0


def test_statistic_exact():
    counts = [300, 175, 175, 175, 175]
    exp = Fraction(sum(counts), len(counts))
    expected = sum((c - exp) ** 2 for c in counts) / exp
    assert expected == Fraction(125, 2)
    res = chi_square_uniform(counts)
    assert res.statistic == pytest.approx(62.5, abs=1e-12)
    assert res.p_value == pytest.approx(stats.chi2.sf(62.5, 4), rel=1e-10)


@pytest.mark.parametrize("n", [10, 37, 1000])
def test_two_categories_extreme(n):
    res = chi_square_uniform([0, n])
    assert res.statistic == pytest.approx(n)


def test_low_expected_warns():
    with pytest.warns(LowExpectedCountWarning):
        chi_square_uniform([1, 2, 3])


@pytest.mark.parametrize("counts", [[5], [0, 0, 0], [1, -1]])
def test_invalid_counts(counts):
    with pytest.raises(ValueError):
        chi_square_uniform(counts)


def test_p_value_grid_against_scipy():
    worst = 0.0
    for df in range(1, 21):
        for k in range(201):
            x = k / 2
            worst = max(worst, abs(chi2_sf(x, df) - stats.chi2.sf(x, df)))
    assert worst < 1e-8


@pytest.mark.parametrize("a", [0.5, 1, 2.5, 10, 50, 200])
@pytest.mark.parametrize("x", [0.01, 0.7, 3, 12, 60, 250])
def test_incomplete_gamma(a, x):
    assert gammainc_lower(a, x) == pytest.approx(special.gammainc(a, x),
                                                 abs=1e-12)
    assert gammainc_upper(a, x) == pytest.approx(special.gammaincc(a, x),
                                                 abs=1e-12)
    assert math.isclose(gammainc_lower(a, x) + gammainc_upper(a, x), 1.0,
                        abs_tol=1e-12)


def test_incomplete_gamma_domain():
    assert gammainc_lower(2, 0) == 0.0 and gammainc_upper(2, 0) == 1.0
    with pytest.raises(ValueError):
        gammainc_lower(0, 1)
    with pytest.raises(ValueError):
        gammainc_upper(1, -1)
