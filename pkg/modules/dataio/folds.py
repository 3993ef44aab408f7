"""
Seeded k-fold partitions
"""
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from .exceptions import FoldError

@dataclass(frozen=True, eq=False)
class FoldAssignment:
    """Fold index per row"""
    folds: np.ndarray
    k: int
    seed: int

    @property
    def n(self) -> int:
        return len(self.folds)

    def fold_sizes(self) -> np.ndarray:
        return np.bincount(self.folds, minlength=self.k)

    def test_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.folds == fold)

    def train_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.folds != fold)

    def splits(self) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
        """Yield (fold, train rows, test rows) in fold order"""
        for fold in range(self.k):
            yield fold, self.train_rows(fold), self.test_rows(fold)

    @classmethod
    def from_folds(cls, folds, seed: int = 0) -> 'FoldAssignment':
        """Explicit assignment, e.g. a hand-chosen split"""
        folds = np.asarray(folds, dtype=np.int64)
        if folds.size == 0 or folds.min() < 0:
            raise FoldError("Fold indices must be non-negative and non-empty")
        k = int(folds.max()) + 1
        if np.any(np.bincount(folds, minlength=k) == 0):
            raise FoldError("Every fold index below the maximum must be used")
        return cls(folds=folds, k=k, seed=seed)

def kfold_partition(n: int, k: int, seed: int) -> FoldAssignment:
    """
    Deterministic shuffled partition of n rows into k folds

    Fold sizes differ by at most one: a seeded permutation is dealt
    round-robin into the folds.
    """
    if k < 2:
        raise FoldError(f"Need at least 2 folds, got {k}")
    if k > n:
        raise FoldError(f"Cannot split {n} rows into {k} folds")
    order = np.random.default_rng(seed).permutation(n)
    folds = np.empty(n, dtype=np.int64)
    folds[order] = np.arange(n) % k
    return FoldAssignment(folds=folds, k=k, seed=seed)
