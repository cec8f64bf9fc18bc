"""Entropy-gap bounds for one-sided subshifts of finite type."""

from ._core import (  # noqa: F401
    ConvergenceError,
    Error,
    ExpandingModel,
    InputError,
    InvariantError,
    MarkovMeasure,
    PerronData,
    PrunedSystem,
    TransitionMatrix,
    count_words,
    cylinder_measure,
    decay_estimate,
    dim_upper_bound,
    effective_bound_verify,
    entropy,
    enumerate_words,
    exceptional_dimension_bound,
    gap_identity_check,
    higher_block_prune,
    information_mean,
    markov_from_transition,
    parry_measure,
    perron_eigendata,
    phi_divergence,
    pinsker_verify,
    prune_words,
    ratio_scan,
    run,
    sample_markov,
    subdominant_modulus,
    survivor_entropy,
    transfer_apply,
)

__version__ = "0.1.0"
