"""
Custom exceptions for leave-one-out variable scoring
"""
from modules.config.exceptions import TreeLearningError

class LooError(TreeLearningError):
    """Base exception for LOO scoring errors"""
    pass

class LooInputError(LooError):
    """Raised when LOO inputs violate a precondition (too few rows, wrong response coding)"""
    pass
