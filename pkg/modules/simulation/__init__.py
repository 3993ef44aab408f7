from .exceptions import SimulationError
from .generators import (InteractionModelParams, FixedDesign, gen_interaction_model, gen_uninformative,
                         interaction_signal, category_labels)
from .series import ExperimentSeries, SeriesRow, read_series, SERIES_COLUMNS
from .experiments import (run_alpha_sweep, run_k_sweep, run_df_experiment, default_learners, oracle_learner,
                          holdout_split, DfPoint, DfCurves)

__all__ = [
    "SimulationError", "InteractionModelParams", "FixedDesign", "gen_interaction_model", "gen_uninformative",
    "interaction_signal", "category_labels", "ExperimentSeries", "SeriesRow", "read_series", "SERIES_COLUMNS",
    "run_alpha_sweep", "run_k_sweep", "run_df_experiment", "default_learners", "oracle_learner",
    "holdout_split", "DfPoint", "DfCurves",
]
