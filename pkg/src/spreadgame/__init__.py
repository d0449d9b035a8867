"""Deterministic infection spreading vs. source identification on networks."""

from .adaptive import AdOutcome, ad_infect
from .dis import (DisPlan, DominantPath, binary_search_tobs, build_dis,
                  dis_size, find_dominant_path, max_safety_margin,
                  regular_tree_counts, solve_delta)
from .game import (EquilibriumReport, GameConfig, admin_utility,
                   best_response_admin, best_response_source, find_nash,
                   source_utility, suspect_set)
from .graph import (UNREACHABLE, Network, TreeView, bfs_distances,
                    bfs_spanning_tree, eccentricity, generate_random_tree,
                    generate_regular_tree, generate_scale_free,
                    jordan_centers, load_edge_list, pick_jordan_center,
                    write_edge_list)
from .experiments import (ExperimentSpec, HarnessResult, observe_subset,
                          run_best_response_admin, run_best_response_source,
                          run_dis_vs_ad, run_incomplete_obs)
from .spread import (InfectionOutcome, InfectionStrategy, RateBounds,
                     horizon_hops, max_rate_strategy, path_infection_time,
                     read_strategy_csv, simulate, write_outcome_csv,
                     write_strategy_csv)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
