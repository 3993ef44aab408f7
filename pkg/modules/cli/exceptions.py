"""
Custom exceptions for the command line
"""
from modules.config.exceptions import TreeLearningError

class CommandError(TreeLearningError):
    """Raised when flags are individually valid but cannot be combined"""
    pass
