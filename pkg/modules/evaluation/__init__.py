"""
Cross-validation, metrics, degrees of freedom and significance tests
"""
from .learners import LearnerSpec, LearnerKind, MeanPredictor, LeastSquaresPredictor, Predictor
from .metrics import MetricKind, metric, auc, observation_losses
from .cross_validation import FoldResult, MetricReport, cross_validate, default_metric
from .dof import DfEstimate, estimate_df
from .significance import SignTestResult, sign_test, PairedTestResult, paired_holdout_test
from .reports import fold_frame, summary_frame, write_fold_report, write_summary
from .exceptions import EvaluationError, MetricError, InsufficientReplicatesError

__all__ = ['LearnerSpec', 'LearnerKind', 'MeanPredictor', 'LeastSquaresPredictor', 'Predictor', 'MetricKind',
           'metric', 'auc', 'observation_losses', 'FoldResult', 'MetricReport', 'cross_validate',
           'default_metric', 'DfEstimate', 'estimate_df', 'SignTestResult', 'sign_test', 'PairedTestResult',
           'paired_holdout_test', 'fold_frame', 'summary_frame', 'write_fold_report', 'write_summary',
           'EvaluationError', 'MetricError', 'InsufficientReplicatesError']
