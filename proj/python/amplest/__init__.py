"""Maximum-likelihood amplitude estimation: schedules, planning, simulation and experiments."""

from ._core import (
    Estimate,
    Plan,
    Schedule,
    achieved_precision,
    build_exp,
    build_exp_nu,
    build_poly,
    call_ratio_table,
    closed_form_s,
    draw_record,
    erfinv,
    exceptional_values,
    expected_avg_error,
    fisher_info,
    grid_maximize,
    grid_size_for,
    grover_power_prob,
    jitter,
    log_lik,
    make_plan,
    nu_bounds,
    required_fisher,
    required_shots,
    run_mlqae,
    s1,
    s2,
    single_shot_fisher,
    speedup_factor,
    sweep,
    total_calls,
    validate_oracle,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
