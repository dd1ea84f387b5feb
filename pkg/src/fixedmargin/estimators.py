"""scikit-learn style wrappers around the randomizers and the significance test.

The estimators follow the usual contract: hyper-parameters are stored
verbatim in ``__init__``, everything learned from the data ends in an
underscore and is set by ``fit``, and ``get_params``/``set_params``/``clone``
work as for any scikit-learn estimator.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.utils.validation import check_is_fitted

from ._validation import check_binary_matrix, check_seed
from .matcore import margins, orientation_for
from .metrics import GREATER, LESS, TWO_SIDED, empirical_p, total_checkerboards
from .swapper import (ATTEMPTED, SwapConfig, independent_swap,
                      recommended_swap_count, sequential_swap_ensemble)
from .trader import (UNIFORM, RandomizerConfig, batch_randomize,
                     default_extraction_count, mix_seed, randomize)


class _FixedMarginMixin(TransformerMixin):

    def _check_same_shape(self, X):
        X = check_binary_matrix(X)
        if X.shape != self.matrix_.shape:
            raise ValueError(
                f"X has shape {X.shape}; the estimator was fitted on "
                f"{self.matrix_.shape}")
        return X

    def _fit_common(self, X):
        X = check_binary_matrix(X, copy=True)
        self.matrix_ = X
        self.margins_ = margins(X)
        self.n_features_in_ = X.shape[1]
        self.seed_ = check_seed(self.random_state)
        return X


class TradeRandomizer(_FixedMarginMixin, BaseEstimator):
    """Randomize a presence-absence matrix by trading between presence lists.

    Parameters
    ----------
    n_extractions : int or None
        Pair extractions per null; None uses ``max(1000, 5 * max(shape))``.
    trade_count_mode : {"uniform_1_to_n", "shuffle_reassign"}
    random_state : int or None
        Base seed.  None draws a fresh one at ``fit`` (kept in ``seed_``).
    n_jobs : int
        Worker threads for :meth:`sample`; never changes the output.
    """

    def __init__(self, n_extractions=None, trade_count_mode=UNIFORM,
                 random_state=None, n_jobs=1):
        self.n_extractions = n_extractions
        self.trade_count_mode = trade_count_mode
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = self._fit_common(X)
        self.n_extractions_ = (self.n_extractions if self.n_extractions
                               is not None else default_extraction_count(X))
        self.orientation_ = orientation_for(X.shape)
        self.config_ = RandomizerConfig(self.n_extractions_,
                                        self.trade_count_mode, self.seed_)
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return randomize(self._check_same_shape(X), self.config_)

    def sample(self, n_samples=1):
        """``n_samples`` independent nulls of the fitted matrix."""
        check_is_fitted(self, "config_")
        return batch_randomize(self.matrix_, n_samples, self.config_,
                               n_jobs=self.n_jobs)


class SwapRandomizer(_FixedMarginMixin, BaseEstimator):
    """Checkerboard-swap baseline (independent or sequential swap).

    ``n_swaps=None`` uses the recommended count: twice the presences times
    the expected attempts per successful swap.
    """

    def __init__(self, method="independent", n_swaps=None,
                 burn_in_attempts=30000, count_mode=ATTEMPTED,
                 random_state=None):
        self.method = method
        self.n_swaps = n_swaps
        self.burn_in_attempts = burn_in_attempts
        self.count_mode = count_mode
        self.random_state = random_state

    def fit(self, X, y=None):
        if self.method not in ("independent", "sequential"):
            raise ValueError(f"unknown method {self.method!r}")
        X = self._fit_common(X)
        self.n_swaps_ = (self.n_swaps if self.n_swaps is not None
                         else recommended_swap_count(X))
        self.config_ = SwapConfig(self.burn_in_attempts, self.n_swaps_,
                                  self.count_mode, self.seed_)
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return independent_swap(self._check_same_shape(X), self.config_)

    def sample(self, n_samples=1):
        check_is_fitted(self, "config_")
        if self.method == "sequential":
            return sequential_swap_ensemble(self.matrix_, n_samples,
                                            self.config_)
        cfg = self.config_
        return [independent_swap(self.matrix_, SwapConfig(
                    cfg.burn_in_attempts, cfg.n_swaps, cfg.count_mode,
                    mix_seed(cfg.seed, i)))
                for i in range(n_samples)]


class NullModelTest(BaseEstimator):
    """Compare a matrix statistic with its distribution over fixed-margin nulls.

    After ``fit(X)``: ``observed_``, ``null_distribution_``, ``null_mean_``,
    ``null_std_`` and ``pvalue_greater_``/``pvalue_less_``/``pvalue_two_sided_``.
    """

    def __init__(self, randomizer=None, n_nulls=999,
                 statistic=total_checkerboards):
        self.randomizer = randomizer
        self.n_nulls = n_nulls
        self.statistic = statistic

    def fit(self, X, y=None):
        if self.n_nulls < 1:
            raise ValueError("n_nulls must be >= 1")
        X = check_binary_matrix(X)
        base = self.randomizer if self.randomizer is not None \
            else TradeRandomizer()
        self.randomizer_ = clone(base).fit(X)
        self.observed_ = self.statistic(X)
        self.null_distribution_ = np.array(
            [self.statistic(null) for null in
             self.randomizer_.sample(self.n_nulls)], dtype=float)
        self.null_mean_ = float(self.null_distribution_.mean())
        self.null_std_ = (float(self.null_distribution_.std(ddof=1))
                          if self.n_nulls > 1 else 0.0)
        self.pvalue_greater_ = empirical_p(self.observed_,
                                           self.null_distribution_, GREATER)
        self.pvalue_less_ = empirical_p(self.observed_,
                                        self.null_distribution_, LESS)
        self.pvalue_two_sided_ = empirical_p(self.observed_,
                                             self.null_distribution_,
                                             TWO_SIDED)
        return self
