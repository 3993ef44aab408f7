"""
Custom exceptions for synthetic experiments
"""
from modules.config.exceptions import TreeLearningError

class SimulationError(TreeLearningError):
    """Raised when generator or experiment parameters are invalid"""
    pass
