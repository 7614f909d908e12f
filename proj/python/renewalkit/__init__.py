"""Lattice decomposition, stable laws, and renewal-sum estimation."""

from ._renewalkit import (  # noqa: F401
    StableLaw,
    StepDistribution,
    a_tilde,
    check_concentration,
    criterion_sum,
    decompose,
    density_grid,
    is_aperiodic,
    isotropic_law,
    k_integral,
    kappa,
    llt_check,
    model_from_json,
    renewal_sum,
    replay_experiment,
    rho,
    run_experiment,
    smith_normal_form,
    spec_schema,
)

__all__ = [
    "StableLaw",
    "StepDistribution",
    "a_tilde",
    "check_concentration",
    "criterion_sum",
    "decompose",
    "density_grid",
    "is_aperiodic",
    "isotropic_law",
    "k_integral",
    "kappa",
    "llt_check",
    "model_from_json",
    "renewal_sum",
    "replay_experiment",
    "rho",
    "run_experiment",
    "smith_normal_form",
    "spec_schema",
]
