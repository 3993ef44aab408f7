"""
Efficient LOO scoring for a binary (0/1) response under gini

Categorical features: a removal only changes the statistics of the
removed row's category, and all rows sharing a (category, label) pair
produce the same replicate, so at most 2K replicates are evaluated and
weighted by multiplicity.

Numeric features: rows are sorted once. For removals of one class walked
in x order, a cut's criterion value depends only on whether the removed
row sits left of it, on it, or right of it, so advancing the removal only
changes the cuts between consecutive removed positions. Cut values live in
a segment tree and each removal reads its optimum from the root.
"""
import logging
import math
from typing import Optional

import numpy as np

from modules.splits.impurity import ImpurityKind, gini_total
from modules.splits.rules import midpoint
from modules.splits.search import category_statistics, sort_categories
from .config import LooConfig, LooScore
from .naive import prepare_inputs
from .relocation import SequenceWithout, relocated_scan, left_out_term
from .segment_tree import MinSegmentTree

logger = logging.getLogger(__name__)

def loo_score_categorical_classification(x, y, cfg: LooConfig, n_categories: Optional[int] = None) -> LooScore:
    x, y = prepare_inputs(x, y, ImpurityKind.GINI, True)
    n = y.size
    k_total = max(int(x.max()) + 1, n_categories or 0)
    cnt, s, ss = category_statistics(x, y, k_total)
    seq = sort_categories(np.flatnonzero(cnt > 0), cnt, s)
    total_ones = float(s.sum())

    terms = np.empty(n)
    any_split = False
    for position, code in enumerate(seq):
        rest = SequenceWithout.build(seq, position, cnt, s, ss)
        in_category = x == code
        for label in (0.0, 1.0):
            rows = np.flatnonzero(in_category & (y == label))
            if rows.size == 0:
                continue
            scan, at = relocated_scan(ImpurityKind.GINI, rest, code, cnt[code] - 1.0, s[code] - label,
                                      ss[code] - label, cfg.min_leaf)
            term, split = left_out_term(label, scan, at, float(n - 1), total_ones - label)
            terms[rows] = term
            any_split |= split
    return LooScore.from_terms(terms, any_split)

class _CutTable:
    """Criterion values of the cuts of the n − 1 remaining rows for one removed class"""

    def __init__(self, xs: np.ndarray, ones: np.ndarray, label: int, min_leaf: int):
        self.xs = xs
        self.ones = ones
        self.label = label
        self.min_leaf = min_leaf
        self.remaining = xs.size - 1
        self.total = int(ones[-1]) - label

    def cut(self, m: int, r: int):
        """Sorted positions bounding cut m (m remaining rows on the left) and the left class-1 count"""
        if m < r:
            return m - 1, m, int(self.ones[m])
        if m == r:
            return r - 1, r + 1, int(self.ones[r])
        return m, m + 1, int(self.ones[m + 1]) - self.label

    def value(self, m: int, r: int) -> float:
        a, b, kl = self.cut(m, r)
        if self.xs[a] == self.xs[b] or m < self.min_leaf or self.remaining - m < self.min_leaf:
            return math.inf
        return gini_total(float(m), float(kl)) + gini_total(float(self.remaining - m), float(self.total - kl))

def loo_score_numeric_classification(x, y, cfg: LooConfig) -> LooScore:
    x, y = prepare_inputs(x, y, ImpurityKind.GINI, False)
    n = y.size
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order].astype(np.int64)
    ones = np.concatenate(([0], np.cumsum(ys)))
    remaining = n - 1
    n_cuts = n - 2  # cut m ∈ [1, n − 2] is stored at position m − 1

    terms = np.empty(n)
    any_split = False
    for label in (0, 1):
        removed = np.flatnonzero(ys == label)
        if removed.size == 0:
            continue
        table = _CutTable(xs, ones, label, cfg.min_leaf)
        if n_cuts < 1:
            terms[order[removed]] = (label - table.total / remaining) ** 2
            continue
        first = int(removed[0])
        tree = MinSegmentTree([table.value(m, first) for m in range(1, n_cuts + 1)])
        previous = first
        for r in removed.tolist():
            for m in range(max(previous, 1), min(r, n_cuts) + 1):
                tree.update(m - 1, table.value(m, r))
            previous = r
            best, position = tree.minimum()
            if not math.isfinite(best):
                terms[order[r]] = (label - table.total / remaining) ** 2
                continue
            any_split = True
            m = position + 1
            a, b, kl = table.cut(m, r)
            if xs[r] <= midpoint(xs[a], xs[b]):
                share = kl / m
            else:
                share = (table.total - kl) / (remaining - m)
            terms[order[r]] = (label - share) ** 2
    logger.debug(f"numeric gini LOO over {n} rows, split found: {any_split}")
    return LooScore.from_terms(terms, any_split)
