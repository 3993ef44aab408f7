"""
Custom exceptions for tree growth, prediction and model files
"""
from modules.config.exceptions import TreeLearningError

class TreeError(TreeLearningError):
    """Base exception for tree errors"""
    pass

class GrowConfigError(TreeError):
    """Raised when a grow configuration is inconsistent"""
    pass

class ModelFormatError(TreeError):
    """Raised when a model document cannot be parsed"""

    def __init__(self, message: str, location: str = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)

class SchemaMismatchError(TreeError):
    """Raised when prediction data does not match the model's schema"""
    pass
