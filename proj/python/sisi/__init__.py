"""Infection-source identification toolkit.

Thin wrapper over the compiled extension: cascade simulators (SI / IC),
truncated reverse infection sampling, the covering-based detector with its
stopping-rule driver, baselines, and solution-quality metrics.
"""

from ._sisi import (  # noqa: F401
    CoverageCounts,
    CoveringSolution,
    DirectedGraph,
    Model,
    ModelParams,
    Observation,
    RRCollection,
    RRSet,
    SisiConfig,
    SisiMode,
    SolutionReport,
    Tau,
    batch_sample,
    compute_lambda,
    coverage,
    detection_rate,
    estimate_sd,
    estimate_sd_forward,
    f1_score,
    gen_grid,
    gen_random_graph,
    greedy_detect,
    jaccard_quality,
    load_edge_list,
    make_observation,
    make_observation_min_size,
    max_degree_detect,
    post_optimize,
    run_sisi,
    sample_rr_fast,
    sample_rr_ic,
    sample_rr_naive,
    simulate_ic,
    simulate_si,
    solve_delta_approx,
    symmetric_difference,
)

__all__ = [name for name in dir() if not name.startswith("_")]
