"""
CSV ingestion and export for tabular datasets
"""
import logging
import math
from typing import List, Dict, Tuple

import numpy as np
import pandas as pd

from modules.config.settings import settings
from modules.config.utils import ensure_parent_dir
from .schema import Schema, ColumnKind
from .dataset import Dataset, FeatureColumn, FeatureKind, Task
from .exceptions import SchemaError, IngestionError, EmptyDataError

logger = logging.getLogger(__name__)

MISSING_POLICIES = ("drop-row",)

def _read_frame(path: str) -> pd.DataFrame:
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False, na_filter=False, skipinitialspace=False)
    except pd.errors.EmptyDataError:
        raise SchemaError(f"{path}: file has no header row")
    except pd.errors.ParserError as e:
        raise IngestionError(f"malformed CSV: {e}")

def _parse_numeric(token: str, row: int, column: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise IngestionError(f"cannot parse '{token}' as a number", row=row, column=column)
    if not math.isfinite(value):
        raise IngestionError(f"non-finite value '{token}' is not allowed", row=row, column=column)
    return value

def _encode_categories(tokens: List[str]) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """Dictionary-encode labels in order of first appearance"""
    mapping: Dict[str, int] = {}
    codes = np.empty(len(tokens), dtype=np.int64)
    for i, token in enumerate(tokens):
        code = mapping.get(token)
        if code is None:
            code = mapping[token] = len(mapping)
        codes[i] = code
    return codes, tuple(mapping)

def _encode_binary(tokens: List[str], column: str) -> Tuple[np.ndarray, Tuple[str, ...]]:
    labels = sorted(set(tokens))
    if len(labels) > 2:
        raise IngestionError(f"binary response has {len(labels)} distinct labels: {', '.join(labels[:5])}",
                             column=column)
    if set(labels) <= {"0", "1"}:
        labels = ["0", "1"]
    elif len(labels) == 1:
        labels = [labels[0], ""]
    lookup = {label: float(code) for code, label in enumerate(labels)}
    return np.array([lookup[t] for t in tokens], dtype=np.float64), tuple(labels)

def load_csv(path: str, schema: Schema, missing_policy: str = "drop-row") -> Dataset:
    """
    Load a CSV file into a Dataset

    Args:
        path: CSV file whose header matches the schema's column names
        schema: column declarations
        missing_policy: only "drop-row" is supported; rows holding a missing
            token (empty cell or "NA") in any declared column are removed

    Returns:
        Dataset with categorical dictionaries in first-appearance order
    """
    if missing_policy not in MISSING_POLICIES:
        raise SchemaError(f"Unsupported missing policy '{missing_policy}'")

    frame = _read_frame(path)
    header = [str(c) for c in frame.columns]
    if header != schema.names:
        raise SchemaError(f"{path}: header {header} does not match schema {schema.names}")

    missing = frame.isin(list(settings.MISSING_TOKENS)).any(axis=1).to_numpy()
    file_rows = np.arange(len(frame)) + 2  # 1-based line numbers, header on line 1
    dropped = int(missing.sum())
    if dropped:
        logger.warning(f"{path}: dropped {dropped} of {len(frame)} rows with missing values")
    frame = frame.loc[~missing]
    file_rows = file_rows[~missing]
    if len(frame) == 0:
        raise EmptyDataError(f"{path}: no rows left after dropping missing values")

    columns = []
    response = None
    response_labels: Tuple[str, ...] = ()
    for spec in schema.columns:
        tokens = frame[spec.name].tolist()
        if spec.kind == ColumnKind.NUMERIC:
            values = [_parse_numeric(t, int(r), spec.name) for t, r in zip(tokens, file_rows)]
            columns.append(FeatureColumn(spec.name, FeatureKind.NUMERIC, np.array(values)))
        elif spec.kind == ColumnKind.CATEGORICAL:
            codes, labels = _encode_categories(tokens)
            columns.append(FeatureColumn(spec.name, FeatureKind.CATEGORICAL, codes, labels))
        elif spec.kind == ColumnKind.RESPONSE_NUMERIC:
            response = np.array([_parse_numeric(t, int(r), spec.name) for t, r in zip(tokens, file_rows)])
        else:
            response, response_labels = _encode_binary(tokens, spec.name)

    task = Task.CLASSIFICATION if schema.response.kind == ColumnKind.RESPONSE_BINARY else Task.REGRESSION
    dataset = Dataset(schema=schema, columns=tuple(columns), response=response, task=task,
                      response_labels=response_labels)
    logger.info(f"Loaded {path}: n={dataset.n}, p={dataset.p}, task={task.value}")
    return dataset

def load_dataset(data_path: str, schema_path: str) -> Dataset:
    """Load a CSV file with its schema sidecar"""
    return load_csv(data_path, Schema.load(schema_path))

def _format_number(value: float) -> str:
    return repr(float(value))

def write_csv(d: Dataset, path: str):
    """Write a dataset back to CSV with category and response labels restored"""
    data = {}
    features = iter(range(d.p))
    for spec in d.schema.columns:
        if spec.kind.is_response:
            y = d.y
            if d.task == Task.CLASSIFICATION and d.response_labels:
                data[spec.name] = [d.response_labels[int(v)] for v in y]
            else:
                data[spec.name] = [_format_number(v) for v in y]
            continue
        j = next(features)
        col = d.column(j)
        values = d.feature(j)
        if col.is_categorical:
            data[spec.name] = [col.categories[int(c)] for c in values]
        else:
            data[spec.name] = [_format_number(v) for v in values]
    ensure_parent_dir(path)
    pd.DataFrame(data, columns=d.schema.names).to_csv(path, index=False)
