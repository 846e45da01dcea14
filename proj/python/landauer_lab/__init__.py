"""Random Landauer processes: heat statistics, concentration checks and sweeps."""

from ._core import (
    __version__,
    beta_for_target,
    convex_hull_peel,
    extract_hamiltonians,
    fit_saturating_exponential,
    gamma_direct,
    gibbs_state,
    haar_unitary,
    heat_distribution,
    levy_bound,
    matrix_log_unitary,
    mutual_information,
    partial_trace,
    process_stats,
    purity,
    random_density_matrix,
    relative_entropy,
    run_cli,
    scaled_temperature,
    selftest,
    temperature_sweep,
    tensor_product,
    trace_norm,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
