"""Competitive two-player information diffusion on social graphs."""

from .cascade import (CascadeOutcome, InfluenceField, Thresholds, Verdict,
                      assign_thresholds, classify, per_level_metrics,
                      propagate_influence)
from .experiment import ExperimentConfig, RunResult, emit_csv, run_experiment
from .game import (BestResponse, GameVerdict, MarginVerdict, PositionModel,
                   best_response, margin_verdict, nash, positions)
from .graphs import (Graph, GraphStats, LevelAssignment, bfs_levels,
                     compute_stats, gen_er, gen_regular, load_edgelist,
                     spanning_tree)
from .meanfield import (BatchResult, CompartmentState, RateParams, SweepGrid,
                        Trajectory, contour_equilibrium, initial_state,
                        integrate, integrate_batch, rhs, sweep_grid)
from .seeding import (CentralityScores, CostTable, PlayerBudget,
                      RankDegreeParams, compute_costs, degree_centrality,
                      eigenvector_centrality, rank_degree_sample, select_seed,
                      select_seeds_greedy)

__version__ = "0.1.0"

__all__ = [
    "CascadeOutcome", "InfluenceField", "Thresholds", "Verdict",
    "assign_thresholds", "classify", "per_level_metrics", "propagate_influence",
    "ExperimentConfig", "RunResult", "emit_csv", "run_experiment",
    "BestResponse", "GameVerdict", "MarginVerdict", "PositionModel",
    "best_response", "margin_verdict", "nash", "positions",
    "Graph", "GraphStats", "LevelAssignment", "bfs_levels", "compute_stats",
    "gen_er", "gen_regular", "load_edgelist", "spanning_tree",
    "BatchResult", "CompartmentState", "RateParams", "SweepGrid", "Trajectory",
    "contour_equilibrium", "initial_state", "integrate", "integrate_batch",
    "rhs", "sweep_grid",
    "CentralityScores", "CostTable", "PlayerBudget", "RankDegreeParams",
    "compute_costs", "degree_centrality", "eigenvector_centrality",
    "rank_degree_sample", "select_seed", "select_seeds_greedy",
    "__version__",
]
