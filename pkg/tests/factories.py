"""
Dataset builders for tests
"""
from typing import Dict, Optional, Sequence

import numpy as np

from modules.dataio.dataset import Dataset, FeatureColumn, FeatureKind, Task
from modules.dataio.schema import Schema

def category_names(name: str, k: int):
    return tuple(f"{name}{c}" for c in range(k))

def build_dataset(features: Dict[str, Sequence], y: Sequence[float], classification: bool = False,
                  categories: Optional[Dict[str, int]] = None,
                  labels: Optional[Dict[str, Sequence[str]]] = None) -> Dataset:
    """
    Dataset from raw columns

    Columns named in `categories` (name -> K) or `labels` (name -> label
    tuple) are categorical codes; the others are numeric.
    """
    categories = categories or {}
    labels = labels or {}
    pairs, columns = [], []
    for name, values in features.items():
        if name in categories or name in labels:
            dictionary = tuple(labels[name]) if name in labels else category_names(name, categories[name])
            pairs.append((name, "categorical"))
            columns.append(FeatureColumn(name, FeatureKind.CATEGORICAL, np.asarray(values, dtype=np.int64),
                                         dictionary))
        else:
            pairs.append((name, "numeric"))
            columns.append(FeatureColumn(name, FeatureKind.NUMERIC, np.asarray(values, dtype=np.float64)))
    pairs.append(("y", "response-binary" if classification else "response-numeric"))
    task = Task.CLASSIFICATION if classification else Task.REGRESSION
    return Dataset(schema=Schema.from_pairs(pairs), columns=tuple(columns),
                   response=np.asarray(y, dtype=np.float64), task=task,
                   response_labels=("0", "1") if classification else ())
