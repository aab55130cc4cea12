"""Weak dispersive order and concentration-based dispersion for discrete data."""

from .concentration import (
    DmSequence, StepFunction, concentration_at, concentration_function, dm_sequence, window_sup,
)
from .distributions import (
    Distribution, DistributionError, LatticeInfo, TailBudget, affine, bernoulli, binomial,
    convolve, degenerate, discrete_uniform, family, from_counts, from_sample, geometric, hermite,
    is_unimodal, lattice_info, logarithmic, make_distribution, map_monotone, neg_binomial, poisson,
)
from .measures import (
    EstimatorConfig, MeasureReport, Sample, centered_rmoment_min, classical_measures, entropy,
    measure_report, nu_r, nu_rob,
)
from .orders import (
    IdentifyingSequence, OrderVerdict, Relation, ek_discrete_compare, ek_relevant_pairs,
    identifying_sequence, lr_compare, randomness_compare, stochastic_compare,
    weak_dispersive_compare,
)

__version__ = "0.1.0"
