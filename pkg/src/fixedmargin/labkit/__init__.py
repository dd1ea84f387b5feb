"""Enumeration, chi-square testing, generators and experiment drivers."""
from .chisq import (ChiSquareResult, LowExpectedCountWarning, chi2_sf,
                    chi_square_uniform, gammainc_lower, gammainc_upper)
from .enumeration import (DEFAULT_LIMIT, canonical_key, count_configurations,
                          enumerate_margin_fixed, gale_ryser)
from .experiments import (ALGORITHMS, SWAP, TRADE, ConfigurationCensus,
                          ExperimentSeries, arithmetic_schedule,
                          convergence_experiment, exact_mean_checkerboards,
                          first_reaching, perturbation_curve,
                          stability_detect, success_rate_curve, timing_curve,
                          uniformity_experiment)
from .generators import (GeneratorExhaustedError, gen_low_checkerboard,
                         gen_random_fill)
