"""
Custom exceptions for evaluation
"""
from modules.config.exceptions import TreeLearningError

class EvaluationError(TreeLearningError):
    """Base exception for evaluation errors"""
    pass

class MetricError(EvaluationError):
    """Raised when a metric or test is undefined for its inputs"""
    pass

class InsufficientReplicatesError(EvaluationError):
    """Raised when a Monte Carlo estimate is requested with too few replicates"""
    pass
