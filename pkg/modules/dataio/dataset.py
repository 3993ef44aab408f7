"""
Immutable columnar datasets and row views
"""
from enum import Enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, List, Dict

import numpy as np

from .schema import Schema, ColumnKind
from .exceptions import DataError

class FeatureKind(str, Enum):
    """Storage kind of a feature column"""
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"

class Task(str, Enum):
    """Learning task implied by the response column"""
    REGRESSION = "regression"
    CLASSIFICATION = "classification"

def _readonly(values: np.ndarray, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr

@dataclass(frozen=True, eq=False)
class FeatureColumn:
    """A numeric column of finite reals, or a dictionary-encoded categorical column"""
    name: str
    kind: FeatureKind
    values: np.ndarray
    categories: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == FeatureKind.NUMERIC:
            values = _readonly(self.values, np.float64)
            if values.size and not np.all(np.isfinite(values)):
                raise DataError(f"Numeric column '{self.name}' contains non-finite values")
        else:
            values = _readonly(self.values, np.int64)
            if len(set(self.categories)) != len(self.categories):
                raise DataError(f"Category labels of column '{self.name}' are not distinct")
            if values.size and (values.min() < 0 or values.max() >= len(self.categories)):
                raise DataError(f"Category codes of column '{self.name}' fall outside [0, {len(self.categories)})")
            object.__setattr__(self, 'categories', tuple(self.categories))
        object.__setattr__(self, 'values', values)

    @property
    def is_categorical(self) -> bool:
        return self.kind == FeatureKind.CATEGORICAL

    @property
    def n_categories(self) -> int:
        return len(self.categories)

    def take(self, rows: np.ndarray) -> 'FeatureColumn':
        return FeatureColumn(self.name, self.kind, self.values[rows], self.categories)

@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature columns plus a real-valued response (binary responses coded 0/1).

    When `rows` is set the dataset is a view: columns and response keep the
    storage of the dataset it was taken from and `rows` indexes into it.
    """
    schema: Schema
    columns: Tuple[FeatureColumn, ...]
    response: np.ndarray
    task: Task
    response_labels: Tuple[str, ...] = ()
    rows: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        response = self.response
        if not (isinstance(response, np.ndarray) and not response.flags.writeable):
            response = _readonly(response, np.float64)
            object.__setattr__(self, 'response', response)
        object.__setattr__(self, 'columns', tuple(self.columns))
        base_n = len(response)
        for col in self.columns:
            if len(col.values) != base_n:
                raise DataError(f"Column '{col.name}' has {len(col.values)} rows, response has {base_n}")
        if self.task == Task.CLASSIFICATION and base_n and not np.all(np.isin(self.y, (0.0, 1.0))):
            raise DataError("Binary response must take values in {0, 1}")

    # ------------------------------------------------------------------
    # Shape and access
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rows) if self.rows is not None else len(self.response)

    @property
    def p(self) -> int:
        return len(self.columns)

    @property
    def y(self) -> np.ndarray:
        return self.response if self.rows is None else self.response[self.rows]

    @property
    def feature_names(self) -> List[str]:
        return [c.name for c in self.columns]

    @property
    def is_classification(self) -> bool:
        return self.task == Task.CLASSIFICATION

    @property
    def dictionaries(self) -> List[Optional[Tuple[str, ...]]]:
        """Category dictionaries per feature (None for numeric features)"""
        return [c.categories if c.is_categorical else None for c in self.columns]

    def column(self, j: int) -> FeatureColumn:
        return self.columns[j]

    def feature(self, j: int) -> np.ndarray:
        """Values (numeric) or codes (categorical) of feature j for the rows of this view"""
        values = self.columns[j].values
        return values if self.rows is None else values[self.rows]

    def feature_index(self, name: str) -> int:
        for j, col in enumerate(self.columns):
            if col.name == name:
                return j
        raise DataError(f"Unknown feature '{name}'")

    def feature_matrix(self) -> List[np.ndarray]:
        return [self.feature(j) for j in range(self.p)]

    # ------------------------------------------------------------------
    # Derived datasets
    # ------------------------------------------------------------------

    def subset(self, rows: Sequence[int], allow_repeats: bool = False) -> 'Dataset':
        """View over the given rows of this dataset.

        Storage is shared; category dictionaries are unchanged, so a
        category may end up with zero rows in the view.
        """
        idx = np.asarray(rows, dtype=np.intp).reshape(-1)
        if idx.size and (idx.min() < 0 or idx.max() >= self.n):
            raise DataError(f"Row index out of range for a dataset of {self.n} rows")
        if not allow_repeats and np.unique(idx).size != idx.size:
            raise DataError("Row indices must be distinct")
        base = idx if self.rows is None else self.rows[idx]
        base = np.array(base, dtype=np.intp)
        base.setflags(write=False)
        return Dataset(schema=self.schema, columns=self.columns, response=self.response,
                       task=self.task, response_labels=self.response_labels, rows=base)

    def materialize(self) -> 'Dataset':
        """Copy of this view with its own compact storage"""
        if self.rows is None:
            return self
        return Dataset(schema=self.schema, columns=tuple(c.take(self.rows) for c in self.columns),
                       response=self.y, task=self.task, response_labels=self.response_labels)

    def select_features(self, names: Sequence[str]) -> 'Dataset':
        """Dataset restricted to the named features, in this dataset's order"""
        keep = set(names)
        missing = keep.difference(self.feature_names)
        if missing:
            raise DataError(f"Unknown features: {', '.join(sorted(missing))}")
        columns = tuple(c for c in self.columns if c.name in keep)
        return Dataset(schema=self.schema.feature_schema([c.name for c in columns]), columns=columns,
                       response=self.response, task=self.task, response_labels=self.response_labels,
                       rows=self.rows)

    def drop_features(self, names: Sequence[str]) -> 'Dataset':
        drop = set(names)
        return self.select_features([name for name in self.feature_names if name not in drop])

    def with_response(self, y: Sequence[float], task: Task = Task.REGRESSION) -> 'Dataset':
        """Same features with a replacement response (e.g. boosting pseudo-responses)"""
        base = self.materialize()
        kind = ColumnKind.RESPONSE_BINARY if task == Task.CLASSIFICATION else ColumnKind.RESPONSE_NUMERIC
        labels = base.response_labels if task == Task.CLASSIFICATION else ()
        return Dataset(schema=base.schema.with_response_kind(kind), columns=base.columns,
                       response=np.asarray(y, dtype=np.float64), task=task, response_labels=labels)

    def recode(self, dictionaries: Sequence[Optional[Sequence[str]]]) -> 'Dataset':
        """Re-express categorical codes in another dataset's dictionaries.

        Labels absent from a given dictionary receive fresh codes after the
        known ones, in this dataset's dictionary order.
        """
        if len(dictionaries) != self.p:
            raise DataError(f"Expected {self.p} dictionaries, got {len(dictionaries)}")
        base = self.materialize()
        columns = []
        for col, known in zip(base.columns, dictionaries):
            if not col.is_categorical or known is None:
                columns.append(col)
                continue
            labels = list(known)
            mapping: Dict[str, int] = {label: code for code, label in enumerate(labels)}
            for label in col.categories:
                if label not in mapping:
                    mapping[label] = len(labels)
                    labels.append(label)
            translate = np.array([mapping[label] for label in col.categories], dtype=np.int64)
            codes = translate[col.values] if col.values.size else col.values
            columns.append(FeatureColumn(col.name, col.kind, codes, tuple(labels)))
        return Dataset(schema=base.schema, columns=tuple(columns), response=base.response,
                       task=base.task, response_labels=base.response_labels)
