"""
Configuration and result types for LOO splitting-variable selection
"""
from dataclasses import dataclass, field
from typing import Optional, List, Sequence

import numpy as np

from modules.config.settings import settings
from modules.splits.impurity import ImpurityKind
from modules.splits.rules import SplitRule, SplitSearchResult
from .exceptions import LooInputError

@dataclass(frozen=True)
class LooConfig:
    """
    Settings for scoring candidate variables

    Attributes:
        kind: impurity criterion of the inner split searches
        min_leaf: minimum rows per child inside every replicate
        folds: None for exact leave-one-out; L < n for the L-fold variant
        seed: fold-assignment seed of the L-fold variant
        stop_margin: stop unless min L(j) < (1 − stop_margin)·L0
        stop_z: also stop unless the per-row improvements of the best feature
            over the baseline have a one-sided z above this (0 disables)
        lookahead_z: a node that would stop still splits on its best feature
            when one child clears the stop rule with this z (0 disables)
        n_jobs: workers for per-feature scoring
    """
    kind: ImpurityKind = ImpurityKind.SQUARED_ERROR
    min_leaf: int = 1
    folds: Optional[int] = None
    seed: int = 0
    stop_margin: float = 0.0
    stop_z: float = settings.LOO_STOP_Z
    lookahead_z: float = settings.LOO_LOOKAHEAD_Z
    n_jobs: int = 1

    def __post_init__(self):
        if self.min_leaf < 1:
            raise LooInputError("min_leaf must be at least 1")
        if self.folds is not None and self.folds < 2:
            raise LooInputError("folds must be at least 2")
        if self.stop_margin < 0:
            raise LooInputError("stop_margin must be non-negative")
        if self.stop_z < 0 or self.lookahead_z < 0:
            raise LooInputError("stop_z and lookahead_z must be non-negative")

    def folds_for(self, n: int) -> int:
        """Number of folds used on a node of n rows (n means exact LOO)"""
        if self.folds is None or self.folds >= n:
            return n
        return self.folds

@dataclass(frozen=True, eq=False)
class LooScore:
    """
    Total LOO loss L(j) of one feature

    `terms` holds R(s_ij, i) per row in the caller's row order; `valid` is
    false when no replicate admitted a split. The naive scorer also keeps
    the per-replicate rules in `splits`.
    """
    total: float
    valid: bool
    terms: np.ndarray
    splits: Optional[List[Optional[SplitRule]]] = None

    @classmethod
    def from_terms(cls, terms: np.ndarray, valid: bool, splits=None) -> 'LooScore':
        return cls(total=float(np.sum(terms)), valid=bool(valid), terms=terms, splits=splits)

@dataclass(frozen=True, eq=False)
class LooScoreTable:
    """
    Per-feature totals L(j), validity flags and the no-split baseline L0

    `terms` (one row per feature) and `baseline_terms` keep the per-row
    losses behind the totals when the table was scored from data.
    """
    features: List[int]
    totals: np.ndarray
    valid: np.ndarray
    baseline: float
    terms: Optional[np.ndarray] = None
    baseline_terms: Optional[np.ndarray] = None

    def improvement_z(self, feature: int) -> float:
        """
        One-sided z of the per-row LOO improvements of a feature over the baseline

        With d_i = b_i − R_i the statistic is Σd / (sd(d)·√n). A single row
        carrying the whole improvement gives z ≤ 1 whatever its size.
        """
        if self.terms is None or self.baseline_terms is None:
            raise LooInputError("The table holds no per-row terms")
        d = self.baseline_terms - self.terms[self.features.index(feature)]
        n = d.size
        total = float(d.sum())
        if n < 2:
            return 0.0
        sd = float(d.std(ddof=1))
        if sd <= 1e-12 * float(np.abs(d).max()):
            if total == 0.0:
                return 0.0
            return np.inf if total > 0 else -np.inf
        return total / (sd * np.sqrt(n))

    def best_feature(self) -> Optional[int]:
        """Feature with the smallest valid L(j), ties to the lowest feature index"""
        best = None
        for j, total, ok in sorted(zip(self.features, self.totals, self.valid)):
            if ok and np.isfinite(total) and (best is None or total < best[1]):
                best = (j, total)
        return None if best is None else best[0]

    def total_for(self, feature: int) -> float:
        return float(self.totals[self.features.index(feature)])

    def as_rows(self) -> List[dict]:
        return [{"feature": j, "loo_loss": float(t), "valid": bool(v)}
                for j, t, v in zip(self.features, self.totals, self.valid)]

@dataclass(frozen=True, eq=False)
class Selection:
    """Outcome of variable selection at a node: a feature and its CART split, or stop"""
    feature: Optional[int]
    table: Optional[LooScoreTable]
    split: Optional[SplitSearchResult] = None
    reason: str = ""

    @property
    def stopped(self) -> bool:
        return self.feature is None
