"""
L-fold generalization of the LOO score

Each fold is held out in turn, the best split is fit on the other folds and
the held-out rows are scored against the side they fall in. With L = n this
is the leave-one-out score.
"""
import logging
from typing import Optional

import numpy as np

from modules.dataio.folds import FoldAssignment, kfold_partition
from modules.splits.search import best_split
from .config import LooConfig, LooScore
from .exceptions import LooInputError
from .naive import prepare_inputs, side_of_left_out

logger = logging.getLogger(__name__)

def _folds(n: int, cfg: LooConfig, folds: Optional[FoldAssignment]) -> FoldAssignment:
    if folds is None:
        if cfg.folds is None:
            raise LooInputError("L-fold scoring needs cfg.folds or an explicit fold assignment")
        return kfold_partition(n, min(cfg.folds, n), cfg.seed)
    if folds.n != n:
        raise LooInputError(f"Fold assignment covers {folds.n} rows, the node has {n}")
    return folds

def lfold_baseline_terms(y, folds: FoldAssignment) -> np.ndarray:
    """Per-row held-out losses of predicting each fold by the mean of the other folds"""
    y = np.asarray(y, dtype=np.float64)
    terms = np.empty(y.size)
    for _, train, test in folds.splits():
        terms[test] = (y[test] - y[train].mean()) ** 2
    return terms

def lfold_baseline(y, folds: FoldAssignment) -> float:
    return float(np.sum(lfold_baseline_terms(y, folds)))

def lfold_score(x, y, cfg: LooConfig, categorical: bool = False, n_categories: Optional[int] = None,
                folds: Optional[FoldAssignment] = None) -> LooScore:
    x, y = prepare_inputs(x, y, cfg.kind, categorical)
    assignment = _folds(y.size, cfg, folds)
    terms = np.empty(y.size)
    splits = []
    for _, train, test in assignment.splits():
        xt, yt = x[train], y[train]
        result = best_split(xt, yt, cfg.kind, categorical, cfg.min_leaf, 0, n_categories)
        splits.append(result.rule)
        if not result.found:
            terms[test] = (y[test] - yt.mean()) ** 2
            continue
        mask = result.rule.goes_left(xt)
        left_n = int(mask.sum())
        left_mean, right_mean = yt[mask].mean(), yt[~mask].mean()
        goes_left = result.rule.goes_left(x[test])
        for i, row in enumerate(test.tolist()):
            seen = not categorical or bool(np.any(xt == x[row]))
            left = side_of_left_out(bool(goes_left[i]), seen, left_n, yt.size - left_n)
            terms[row] = (y[row] - (left_mean if left else right_mean)) ** 2
    valid = any(rule is not None for rule in splits)
    return LooScore.from_terms(terms, valid, splits)
