"""Local push, SOR, random-walk and forest-sampling solvers for FJ opinion dynamics."""
from .forest import ForestRoots, forest_sample, random_forest, root_frequencies
from .graph import (EdgeListError, Graph, barabasi_albert, complete_graph, dump_edge_list,
                    erdos_renyi, from_edges, grid_2d, load_edge_list, path_graph,
                    read_edge_list)
from .metrics import (MetricsReport, controversy, disagreement, internal_conflict,
                      polarization, report, total_stress)
from .opinions import (OpinionError, gen_exponential, gen_powerlaw, gen_uniform,
                       load_opinions)
from .oracle import DenseCapError, ConvergenceError, iterate_sync, solve_dense
from .push import PushState, bound_local_iter, improved_bli, residual_invariant_gap
from .result import DivergenceError, EstimateResult, NumericalFailure, WatchdogError
from .sor import (OmegaSelection, bound_local_iter_sor, improved_blisor, omega_opt_dense,
                  omega_sweep)
from .walks import WalkConfig, discounted_walk, hoeffding_walks, rwb_all, rwb_estimate

__version__ = "0.1.0"
