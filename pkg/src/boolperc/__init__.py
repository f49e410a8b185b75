"""Lower bounds for the critical intensity of the Boolean model with
unit-ball grains: rigorous bounds and exact Monte-Carlo simulation."""

__version__ = "0.1.0"

from .bounds import (
    hall_bound,
    hall_kernel,
    hall_mean_cluster_size,
    hall_operator,
    penrose_bound,
    phi_b3,
    phi_b3_bound,
    spectral_radius,
)
from .cluster import ExploreConfig, Outcome, SpatialGrid, explore_cluster, naive_reach_oracle
from .estimator import (
    BoundEstimate,
    TrialSummary,
    estimate_bound,
    lower_bound_from_theta,
    run_trials,
    wilson_upper_cc,
)
from .sampling import (
    RngStream,
    make_stream,
    poisson,
    uniform_in_ball_normalized,
    uniform_in_ball_rejection,
    uniform_in_shifted_ball,
)
from .specialfn import (
    Quadrature,
    ball_volume,
    cap_volume,
    find_root_increasing,
    lens_volume,
    quadrature_on,
    sin_power_integral,
)

__all__ = [
    "__version__",
    "ball_volume", "cap_volume", "lens_volume", "sin_power_integral",
    "Quadrature", "quadrature_on", "find_root_increasing",
    "RngStream", "make_stream", "poisson",
    "uniform_in_ball_rejection", "uniform_in_ball_normalized", "uniform_in_shifted_ball",
    "ExploreConfig", "Outcome", "SpatialGrid", "explore_cluster", "naive_reach_oracle",
    "TrialSummary", "BoundEstimate", "run_trials", "wilson_upper_cc",
    "lower_bound_from_theta", "estimate_bound",
    "penrose_bound", "phi_b3", "phi_b3_bound",
    "hall_kernel", "hall_operator", "spectral_radius", "hall_bound",
    "hall_mean_cluster_size",
]
