"""
Custom exceptions for ensembles
"""
from modules.config.exceptions import TreeLearningError

class EnsembleError(TreeLearningError):
    """Base exception for ensemble errors"""
    pass

class EnsembleConfigError(EnsembleError):
    """Raised when an ensemble configuration does not fit the data or task"""
    pass
