"""
Root exceptions shared by every package
"""

class TreeLearningError(Exception):
    """Base exception for all library errors"""
    pass

class ConfigError(TreeLearningError):
    """Raised when a configuration value is out of range"""
    pass
