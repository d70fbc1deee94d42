"""Movable-antenna placement optimization via discrete sampling.

A library plus CLI: a sampling-grid channel model, regularized zero-forcing
precoding under a power budget, a sequential-update optimizer with a
Gibbs-style exploration phase, baseline schemes, and a seeded Monte-Carlo
experiment harness emitting CSV results and summary figures.
"""

from .baselines import (PsoConfig, PsoResult, all_feasible_ascending,
                        brute_force_optimum, fpa_indices, pso_optimize)
from .grid_channel import (ChannelMap, PathSet, SamplingGrid, build_grid,
                           channel_at, channel_map_from_csv, channel_map_to_csv,
                           draw_paths, generate_channel_map, index_to_position,
                           path_set_from_csv, path_set_to_csv)
from .harness import (AlgorithmSettings, ExperimentConfig, PsoSettings,
                      ResultTable, RunRecord, SummaryRecord, config_from_dict,
                      dbm_to_watts, emit_csv, emit_trace_csv, figure_presets,
                      load_config, run_experiment, validate_config)
from .optimizer import (AlgorithmConfig, AlgorithmResult, CachedUtility,
                        CallableUtility, GsState, IndexVector, RoundRecord,
                        UtilityOracle, adjacent_candidates, default_config,
                        feasibility_set, gibbs_phase, gibbs_select, is_feasible,
                        random_feasible, run_algorithm_1,
                        sequential_update_round, spread_ascending)
from .oracles import SnrUtility, SumRateUtility, oracle_for_scenario
from .precoding import (PrecoderSolution, bisect_rho, mrt_precoder,
                        received_snr, rzf_precoder, user_rates)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig", "AlgorithmResult", "AlgorithmSettings", "CachedUtility",
    "CallableUtility", "ChannelMap", "ExperimentConfig", "GsState",
    "IndexVector", "PathSet", "PrecoderSolution", "PsoConfig", "PsoResult",
    "PsoSettings", "ResultTable", "RoundRecord", "RunRecord", "SamplingGrid",
    "SnrUtility", "SumRateUtility", "SummaryRecord", "UtilityOracle",
    "adjacent_candidates", "all_feasible_ascending", "bisect_rho",
    "brute_force_optimum", "build_grid", "channel_at", "channel_map_from_csv",
    "channel_map_to_csv", "config_from_dict", "dbm_to_watts", "default_config",
    "draw_paths", "emit_csv", "emit_trace_csv", "errors", "feasibility_set",
    "figure_presets", "fpa_indices", "generate_channel_map", "gibbs_phase",
    "gibbs_select", "index_to_position", "is_feasible", "load_config",
    "mrt_precoder", "oracle_for_scenario", "path_set_from_csv",
    "path_set_to_csv", "pso_optimize", "random_feasible", "received_snr",
    "run_algorithm_1", "run_experiment", "rzf_precoder",
    "sequential_update_round", "spread_ascending", "user_rates",
    "validate_config",
]
