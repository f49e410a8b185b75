"""Monte-Carlo driver: reach-probability estimates, Wilson upper confidence
limits, and the resulting lower bound t * (1 - theta) for the critical
intensity."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from scipy.special import ndtri

from .cluster import THRESHOLD, ExploreConfig, explore_cluster
from .sampling import make_stream


@dataclass(frozen=True)
class TrialSummary:
    runs: int
    successes: int  # boundary reaches plus threshold stops
    threshold_hits: int
    total_grains: int
    wall_time: float

    def __post_init__(self):
        if not 0 <= self.threshold_hits <= self.successes <= self.runs:
            raise ValueError(
                f"inconsistent counts: {self.threshold_hits} threshold hits, "
                f"{self.successes} successes, {self.runs} runs"
            )


@dataclass(frozen=True)
class BoundEstimate:
    d: int
    t: float
    r: float
    summary: TrialSummary
    confidence_level: float
    theta_upper: float
    lower_bound: float


def _run_block(config: ExploreConfig, master_seed: int, start: int, stop: int):
    successes = threshold_hits = total_grains = 0
    for i in range(start, stop):
        out = explore_cluster(config, make_stream(master_seed, i))
        total_grains += out.size
        if out.is_success:
            successes += 1
            if out.kind == THRESHOLD:
                threshold_hits += 1
    return successes, threshold_hits, total_grains


def run_trials(
    config: ExploreConfig,
    master_seed: int,
    n_runs: int,
    parallelism: int = 1,
) -> TrialSummary:
    """Run n_runs independent explorations; trial i uses stream (master_seed, i).

    Counts are identical for every parallelism level because each trial owns
    its stream; workers merely partition the index range.
    """
    if n_runs < 1:
        raise ValueError(f"need at least one run, got {n_runs}")
    if parallelism < 1:
        raise ValueError(f"parallelism must be >= 1, got {parallelism}")
    start = time.perf_counter()
    if parallelism == 1:
        successes, threshold_hits, total_grains = _run_block(
            config, master_seed, 0, n_runs
        )
    else:
        bounds = [
            (n_runs * k // parallelism, n_runs * (k + 1) // parallelism)
            for k in range(parallelism)
        ]
        successes = threshold_hits = total_grains = 0
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = [
                pool.submit(_run_block, config, master_seed, lo, hi)
                for lo, hi in bounds
                if hi > lo
            ]
            for fut in futures:
                s, th, g = fut.result()
                successes += s
                threshold_hits += th
                total_grains += g
    return TrialSummary(
        runs=n_runs,
        successes=successes,
        threshold_hits=threshold_hits,
        total_grains=total_grains,
        wall_time=time.perf_counter() - start,
    )


def wilson_upper_cc(successes: int, runs: int, level: float) -> float:
    """One-sided Wilson score upper limit with continuity correction.

    Matches R's prop.test: the Wilson formula evaluated at the
    continuity-shifted proportion (successes + 1/2) / runs.  Conservative
    (always >= successes / runs), returns 1 when every run succeeded.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if not 0 <= successes <= runs:
        raise ValueError(f"need 0 <= successes <= runs, got {successes}/{runs}")
    if not 0 < level < 1:
        raise ValueError(f"confidence level must be in (0, 1), got {level}")
    if successes == runs:
        return 1.0
    z = float(ndtri(level))
    n = runs
    pc = min(1.0, (successes + 0.5) / n)
    upper = (pc + z * z / (2 * n) + z * ((pc * (1 - pc) / n + z * z / (4 * n * n)) ** 0.5)) / (
        1 + z * z / n
    )
    return min(1.0, upper)


def lower_bound_from_theta(t: float, theta_upper: float) -> float:
    """Lower bound t * (1 - theta) for the critical intensity."""
    if t < 0:
        raise ValueError(f"intensity must be >= 0, got {t}")
    if not 0 <= theta_upper <= 1:
        raise ValueError(f"theta must lie in [0, 1], got {theta_upper}")
    return t * (1.0 - theta_upper)


def estimate_bound(
    config: ExploreConfig,
    master_seed: int,
    n_runs: int,
    level: float = 0.99,
    parallelism: int = 1,
) -> BoundEstimate:
    """Full pipeline: trials -> Wilson upper limit -> lower bound for t_c."""
    summary = run_trials(config, master_seed, n_runs, parallelism=parallelism)
    theta_upper = wilson_upper_cc(summary.successes, summary.runs, level)
    return BoundEstimate(
        d=config.d,
        t=config.t,
        r=config.r,
        summary=summary,
        confidence_level=level,
        theta_upper=theta_upper,
        lower_bound=lower_bound_from_theta(config.t, theta_upper),
    )
