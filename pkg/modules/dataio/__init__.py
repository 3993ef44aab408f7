"""
Dataset ingestion, encoding and partitioning
"""
from .schema import Schema, ColumnSpec, ColumnKind
from .dataset import Dataset, FeatureColumn, FeatureKind, Task
from .loader import load_csv, load_dataset, write_csv
from .folds import FoldAssignment, kfold_partition
from .exceptions import DataError, SchemaError, IngestionError, EmptyDataError, FoldError

__all__ = ['Schema', 'ColumnSpec', 'ColumnKind', 'Dataset', 'FeatureColumn', 'FeatureKind', 'Task',
           'load_csv', 'load_dataset', 'write_csv', 'FoldAssignment', 'kfold_partition',
           'DataError', 'SchemaError', 'IngestionError', 'EmptyDataError', 'FoldError']
