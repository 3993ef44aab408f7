"""
Reference leave-one-out scoring

For each row i the best split is searched on the other n − 1 rows and the
row is scored by the squared distance from its response to the mean (or
class-1 proportion) of the side it falls in. Costs n full split searches;
the efficient scorers must agree with it.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from modules.splits.impurity import ImpurityKind, check_binary
from modules.splits.search import best_split
from .config import LooConfig, LooScore
from .exceptions import LooInputError

logger = logging.getLogger(__name__)

def prepare_inputs(x, y, kind: ImpurityKind, categorical: bool) -> Tuple[np.ndarray, np.ndarray]:
    """Validated copies of a feature column and response"""
    x = np.asarray(x)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise LooInputError(f"Feature and response lengths differ ({x.shape} vs {y.shape})")
    if y.size < 2:
        raise LooInputError(f"Leave-one-out scoring needs at least 2 rows, got {y.size}")
    if kind == ImpurityKind.GINI:
        if not np.all((y == 0.0) | (y == 1.0)):
            raise LooInputError("Gini scoring requires a response coded 0/1")
    x = x.astype(np.int64) if categorical else x.astype(np.float64)
    if categorical and x.min() < 0:
        raise LooInputError("Category codes must be non-negative")
    return x, y

def loo_baseline_terms(y, kind: ImpurityKind = ImpurityKind.SQUARED_ERROR) -> np.ndarray:
    """
    Per-row LOO losses of the no-split prediction: (y_i − ȳ^(−i))²

    Binary responses are 0/1 coded, so the same formula serves gini.
    """
    y = np.asarray(y, dtype=np.float64)
    n = y.size
    if n < 2:
        raise LooInputError(f"The LOO baseline needs at least 2 rows, got {n}")
    if kind == ImpurityKind.GINI:
        check_binary(y)
    others = (y.sum() - y) / (n - 1)
    return (y - others) ** 2

def loo_baseline(y, kind: ImpurityKind = ImpurityKind.SQUARED_ERROR) -> float:
    """LOO loss of the no-split prediction: Σ_i (y_i − ȳ^(−i))²"""
    return float(np.sum(loo_baseline_terms(y, kind)))

def side_of_left_out(goes_left: bool, seen: bool, left_n: float, right_n: float) -> bool:
    """Side a left-out row is scored on; rows of an emptied category go to the larger side"""
    if seen:
        return goes_left
    return left_n >= right_n

def loo_score_naive(x, y, cfg: LooConfig, categorical: bool = False,
                    n_categories: Optional[int] = None) -> LooScore:
    """
    L(j) by brute force, keeping the split chosen in every replicate

    A replicate with no legal split scores its row against the mean of the
    other n − 1 rows; the score is valid when at least one replicate split.
    """
    x, y = prepare_inputs(x, y, cfg.kind, categorical)
    n = y.size
    terms = np.empty(n)
    splits = []
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        keep[i] = False
        xr, yr = x[keep], y[keep]
        keep[i] = True
        result = best_split(xr, yr, cfg.kind, categorical, cfg.min_leaf, 0, n_categories)
        splits.append(result.rule)
        if not result.found:
            terms[i] = (y[i] - yr.mean()) ** 2
            continue
        mask = result.rule.goes_left(xr)
        seen = not categorical or bool(np.any(xr == x[i]))
        left_n = int(mask.sum())
        left = side_of_left_out(bool(result.rule.goes_left(x[i:i + 1])[0]), seen, left_n, n - 1 - left_n)
        side = yr[mask] if left else yr[~mask]
        terms[i] = (y[i] - side.mean()) ** 2
    valid = any(rule is not None for rule in splits)
    return LooScore.from_terms(terms, valid, splits)
