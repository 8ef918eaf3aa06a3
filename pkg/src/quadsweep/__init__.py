"""quadsweep: exact k-subset selection for correlation-family objectives."""

__version__ = "0.1.0"

from .stats import (Dataset, ObjectiveDescriptor, SufficientStats, OBJECTIVES,
                    add_point, compare, get_objective, remove_point, score,
                    stats_from_subset)
from .lifting import (LiftedPoint, lift, lift_dataset, lift_matrix,
                      objective_lift_matrix, transform_coordinates)
from .geometry import (Hyperplane, SeparabilityReport, check_separability,
                       hull_distance, hyperplane_from_tuple)
from .sweep import SweepResult, naive_quadratic_sweep, sliding_window_variance
from .oracle import BudgetExceededError, brute_force_select, lts_brute_force
from .baselines import (AnnealConfig, RansacConfig, RansacResult, ransac_line,
                        simulated_annealing_select, theil_sen)
from .harness import (ExperimentConfig, TrialRecord, generate_dataset,
                      run_experiment, run_optimality_experiment,
                      run_separability_experiment, run_timing_experiment,
                      trial_seeds)

__all__ = [
    "__version__",
    "Dataset", "SufficientStats", "ObjectiveDescriptor", "OBJECTIVES",
    "stats_from_subset", "add_point", "remove_point", "score", "compare",
    "get_objective",
    "LiftedPoint", "lift", "lift_dataset", "lift_matrix",
    "objective_lift_matrix", "transform_coordinates",
    "Hyperplane", "SeparabilityReport", "hyperplane_from_tuple",
    "hull_distance", "check_separability",
    "SweepResult", "naive_quadratic_sweep", "sliding_window_variance",
    "brute_force_select", "lts_brute_force", "BudgetExceededError",
    "AnnealConfig", "RansacConfig", "RansacResult",
    "simulated_annealing_select", "ransac_line", "theil_sen",
    "ExperimentConfig", "TrialRecord", "generate_dataset", "trial_seeds",
    "run_experiment", "run_separability_experiment",
    "run_optimality_experiment", "run_timing_experiment",
]
