"""
Custom exceptions for split search
"""
from modules.config.exceptions import TreeLearningError

class SplitError(TreeLearningError):
    """Base exception for split-search errors"""
    pass

class SplitInputError(SplitError):
    """Raised when split-search inputs are empty, misaligned or of the wrong kind"""
    pass

class ExhaustiveSearchRefused(SplitError):
    """Raised when exhaustive subset enumeration would exceed the category limit"""
    pass
