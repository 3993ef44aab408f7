"""
Custom exceptions for dataset ingestion and partitioning
"""
from modules.config.exceptions import TreeLearningError

class DataError(TreeLearningError):
    """Base exception for dataset-related errors"""
    pass

class SchemaError(DataError):
    """Raised when a schema is malformed or does not match a file header"""
    pass

class IngestionError(DataError):
    """Raised when a cell cannot be parsed"""

    def __init__(self, message: str, row: int = None, column: str = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(prefix + message)
        self.row = row
        self.column = column

class EmptyDataError(DataError):
    """Raised when no rows remain after applying the missing-value policy"""
    pass

class FoldError(DataError):
    """Raised when a fold partition is infeasible"""
    pass
