"""Chi-square goodness of fit against a uniform distribution.

The upper tail is computed from the regularized incomplete gamma function:
the power series for ``x < a + 1`` and a modified-Lentz continued fraction
otherwise.
"""
import math
import warnings
from dataclasses import dataclass

MAX_ITER = 500
EPS = 1e-16
_TINY = 1e-300


class LowExpectedCountWarning(UserWarning):
    """Expected count per category is below 5; the chi-square approximation is rough."""


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p_value: float
    degenerate: bool = False


def _prefactor(a, x):
    return math.exp(-x + a * math.log(x) - math.lgamma(a))


def _lower_series(a, x):
    term = total = 1.0 / a
    ap = a
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * EPS:
            return total * _prefactor(a, x)
    raise ConvergenceError(f"gamma series did not converge for a={a}, x={x}")


def _upper_fraction(a, x):
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return h * _prefactor(a, x)
    raise ConvergenceError(
        f"gamma continued fraction did not converge for a={a}, x={x}")


def gammainc_lower(a, x):
    """Regularized lower incomplete gamma ``P(a, x)``."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0:
        return 0.0
    if x < a + 1.0:
        return min(1.0, _lower_series(a, x))
    return max(0.0, 1.0 - _upper_fraction(a, x))


def gammainc_upper(a, x):
    """Regularized upper incomplete gamma ``Q(a, x) = 1 - P(a, x)``."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _lower_series(a, x))
    return min(1.0, _upper_fraction(a, x))


def chi2_sf(statistic, df):
    """Upper-tail probability of a chi-square variate with ``df`` degrees of freedom."""
    return gammainc_upper(df / 2.0, statistic / 2.0)


def chi_square_uniform(counts, warn=True):
    """Test observed category counts against equal expected frequencies."""
    counts = [int(c) for c in counts]
    if len(counts) < 2:
        raise ValueError("need at least two categories")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    if total == 0:
        raise ValueError("total count is zero")
    expected = total / len(counts)
    if warn and expected < 5:
        warnings.warn(
            f"expected count per category is {expected:.3g} (< 5)",
            LowExpectedCountWarning, stacklevel=2)
    statistic = sum((c - expected) ** 2 for c in counts) / expected
    df = len(counts) - 1
    return ChiSquareResult(statistic, df, chi2_sf(statistic, df))
