"""Transfer matrices at tangential eigenvalue crossings."""

from ._core import (
    Coupling,
    CrossingError,
    contact_order,
    fit_power_law,
    gamma_real,
    geometric_grid,
    model_omega,
    model_sweep,
    model_transfer,
    mu_m,
    osc_integral,
    osc_leading_term,
    poisson_bracket,
    predict_general,
    schrodinger_numeric,
    schrodinger_predict,
)

__all__ = [
    "Coupling",
    "CrossingError",
    "contact_order",
    "fit_power_law",
    "gamma_real",
    "geometric_grid",
    "model_omega",
    "model_sweep",
    "model_transfer",
    "mu_m",
    "osc_integral",
    "osc_leading_term",
    "poisson_bracket",
    "predict_general",
    "schrodinger_numeric",
    "schrodinger_predict",
]
