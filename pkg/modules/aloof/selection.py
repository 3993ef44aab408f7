"""
Splitting-variable selection by leave-one-out generalization loss
"""
import logging
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from modules.dataio.dataset import Dataset
from modules.dataio.folds import FoldAssignment, kfold_partition
from modules.splits.impurity import ImpurityKind
from modules.splits.search import best_split
from .config import LooConfig, LooScore, LooScoreTable, Selection
from .classification import loo_score_categorical_classification, loo_score_numeric_classification
from .regression import loo_score_categorical_regression, loo_score_numeric_regression
from .lfold import lfold_score, lfold_baseline_terms
from .naive import loo_baseline_terms
from .exceptions import LooInputError

logger = logging.getLogger(__name__)

def score_feature(x, y, cfg: LooConfig, categorical: bool, n_categories: Optional[int] = None,
                  folds: Optional[FoldAssignment] = None) -> LooScore:
    """L(j) of one feature using the efficient scorer for its kind and criterion"""
    n = len(y)
    if folds is not None or cfg.folds_for(n) < n:
        return lfold_score(x, y, cfg, categorical, n_categories, folds)
    if cfg.kind == ImpurityKind.GINI:
        if categorical:
            return loo_score_categorical_classification(x, y, cfg, n_categories)
        return loo_score_numeric_classification(x, y, cfg)
    if categorical:
        return loo_score_categorical_regression(x, y, cfg, n_categories)
    return loo_score_numeric_regression(x, y, cfg)

def score_table(d: Dataset, cfg: LooConfig, features: Optional[Sequence[int]] = None) -> LooScoreTable:
    """LooScoreTable over the given features (all by default) of a node"""
    n = d.n
    if n < 2:
        raise LooInputError(f"Variable selection needs at least 2 rows, got {n}")
    features = list(range(d.p)) if features is None else sorted(int(j) for j in features)
    y = d.y
    folds = None
    if cfg.folds_for(n) < n:
        folds = kfold_partition(n, cfg.folds_for(n), cfg.seed)
        baseline = lfold_baseline_terms(y, folds)
    else:
        baseline = loo_baseline_terms(y, cfg.kind)

    args = [(d.feature(j), y, cfg, d.column(j).is_categorical, d.column(j).n_categories or None, folds)
            for j in features]
    if cfg.n_jobs == 1 or len(features) < 2:
        scores = [score_feature(*a) for a in args]
    else:
        scores = Parallel(n_jobs=cfg.n_jobs)(delayed(score_feature)(*a) for a in args)

    terms = np.vstack([s.terms for s in scores]) if scores else np.empty((0, n))
    return LooScoreTable(features=features,
                         totals=np.array([s.total for s in scores], dtype=np.float64),
                         valid=np.array([s.valid for s in scores], dtype=bool),
                         baseline=float(np.sum(baseline)),
                         terms=terms,
                         baseline_terms=baseline)

def improves(table: LooScoreTable, feature: int, cfg: LooConfig, z_crit: float) -> bool:
    """min L(j) < (1 − stop_margin)·L0 and, when z_crit > 0, an improvement z above z_crit"""
    if not table.total_for(feature) < (1.0 - cfg.stop_margin) * table.baseline:
        return False
    return z_crit <= 0 or table.improvement_z(feature) > z_crit

def _child_clears(d: Dataset, cfg: LooConfig, features: Sequence[int]) -> bool:
    if d.n < max(2, 2 * cfg.min_leaf) or np.ptp(d.y) == 0:
        return False
    table = score_table(d, cfg, features)
    best = table.best_feature()
    return best is not None and improves(table, best, cfg, cfg.lookahead_z)

def select_variable(d: Dataset, cfg: LooConfig, features: Optional[Sequence[int]] = None,
                    use_stopping_rule: bool = True, lookahead: bool = True) -> Selection:
    """
    Choose the splitting variable of a node, or stop

    The feature with the smallest L(j) (lowest index on ties) is chosen
    together with its CART split on the full node. The node stops when no
    feature is valid, or when the chosen feature fails the stop rule: L(j)
    must be below (1 − stop_margin)·L0 and the one-sided z of its per-row
    improvements must exceed stop_z. A node that fails the rule still splits
    when one of the two children it would get passes the rule at lookahead_z,
    which lets the tree enter interactions whose first split alone carries
    no signal.

    Args:
        d: rows of the node
        cfg: LOO settings
        features: candidate features (random-forest sampling), all by default
        use_stopping_rule: False for fixed-size ensemble trees
        lookahead: False when the children could not be split anyway
    """
    table = score_table(d, cfg, features)
    best = table.best_feature()
    if best is None:
        logger.debug("LOO selection: no valid feature")
        return Selection(None, table, reason="no valid split")

    col = d.column(best)
    split = best_split(d.feature(best), d.y, cfg.kind, col.is_categorical, cfg.min_leaf, best,
                       col.n_categories or None)
    if not split.found:
        return Selection(None, table, reason="selected feature has no legal split on the full node")
    best_total = table.total_for(best)
    if not use_stopping_rule or improves(table, best, cfg, cfg.stop_z):
        logger.debug(f"LOO selection: feature {best} ({col.name}), L={best_total:.6g}, "
                     f"baseline {table.baseline:.6g}")
        return Selection(best, table, split)

    if lookahead and cfg.lookahead_z > 0:
        mask = split.rule.goes_left(d.feature(best))
        rows = np.arange(d.n)
        candidates = table.features
        if any(_child_clears(d.subset(side), cfg, candidates) for side in (rows[mask], rows[~mask])):
            logger.debug(f"LOO selection: feature {best} ({col.name}) kept for a child that clears the stop rule")
            return Selection(best, table, split, reason="a child clears the stop rule")

    logger.debug(f"LOO selection: stop, min L={best_total:.6g} vs baseline {table.baseline:.6g}")
    return Selection(None, table, reason="no significant improvement over the no-split baseline")
