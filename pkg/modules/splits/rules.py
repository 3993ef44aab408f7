"""
Split rules and split-search results
"""
from dataclasses import dataclass
from typing import Optional, FrozenSet, Iterable

import numpy as np

from .exceptions import SplitInputError

def midpoint(lo: float, hi: float) -> float:
    """Threshold strictly between two distinct sorted values, so that x ≤ t selects lo"""
    t = lo + (hi - lo) / 2.0
    return lo if t >= hi else t

@dataclass(frozen=True)
class SplitRule:
    """Numeric rule (left iff x ≤ threshold) or categorical rule (left iff code ∈ left_categories)"""
    feature: int
    threshold: Optional[float] = None
    left_categories: Optional[FrozenSet[int]] = None

    def __post_init__(self):
        if (self.threshold is None) == (self.left_categories is None):
            raise SplitInputError("A split rule needs exactly one of threshold or left_categories")
        if self.left_categories is not None:
            object.__setattr__(self, 'left_categories', frozenset(int(c) for c in self.left_categories))
        else:
            object.__setattr__(self, 'threshold', float(self.threshold))

    @property
    def is_categorical(self) -> bool:
        return self.left_categories is not None

    def goes_left(self, values: np.ndarray) -> np.ndarray:
        """Boolean mask of the rows sent left; codes outside the left-set go right"""
        values = np.asarray(values)
        if self.is_categorical:
            return np.isin(values, np.fromiter(self.left_categories, dtype=np.int64))
        return values <= self.threshold

    def canonical(self, occupied: Iterable[int]) -> 'SplitRule':
        """Equivalent categorical rule whose left-set holds the lowest occupied code"""
        if not self.is_categorical:
            return self
        occupied = frozenset(int(c) for c in occupied)
        left = self.left_categories & occupied
        if min(occupied) in left:
            return SplitRule(self.feature, left_categories=left)
        return SplitRule(self.feature, left_categories=occupied - left)

    def describe(self, feature_name: str = None, labels=None) -> str:
        name = feature_name or f"x{self.feature}"
        if not self.is_categorical:
            return f"{name} <= {self.threshold:.6g}"
        codes = sorted(self.left_categories)
        shown = [labels[c] if labels is not None and c < len(labels) else str(c) for c in codes]
        if len(shown) > 6:
            shown = shown[:6] + [f"... ({len(codes)} categories)"]
        return f"{name} in {{{', '.join(shown)}}}"

@dataclass(frozen=True)
class SplitSearchResult:
    """Best split found for one feature, with ℒ at that split and the no-split impurity"""
    rule: Optional[SplitRule]
    impurity: float
    node_impurity: float

    @property
    def found(self) -> bool:
        return self.rule is not None
