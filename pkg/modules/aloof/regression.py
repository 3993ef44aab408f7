"""
Efficient LOO scoring for a continuous response under squared error

The response is centred once on the full node. Categorical features
relocate the removed row's category and rescan the K prefixes per row.
Numeric features sort once; for every removal all n − 2 cuts are evaluated
from the full-data prefix sums, in blocks of removals so the work runs as
array operations.
"""
import logging
from typing import Optional

import numpy as np

from modules.config.settings import settings
from modules.splits.impurity import ImpurityKind, split_impurity, sse_total
from modules.splits.search import category_statistics, sort_categories
from .config import LooConfig, LooScore
from .naive import prepare_inputs
from .relocation import SequenceWithout, relocated_scan, left_out_term

logger = logging.getLogger(__name__)

BLOCK_CELLS = 1 << 20

def loo_score_categorical_regression(x, y, cfg: LooConfig, n_categories: Optional[int] = None) -> LooScore:
    x, y = prepare_inputs(x, y, ImpurityKind.SQUARED_ERROR, True)
    n = y.size
    stat = y - y.mean()
    k_total = max(int(x.max()) + 1, n_categories or 0)
    cnt, s, ss = category_statistics(x, stat, k_total)
    seq = sort_categories(np.flatnonzero(cnt > 0), cnt, s)
    total_s = float(stat.sum())

    terms = np.empty(n)
    any_split = False
    for position, code in enumerate(seq):
        rest = SequenceWithout.build(seq, position, cnt, s, ss)
        for i in np.flatnonzero(x == code).tolist():
            v = float(stat[i])
            scan, at = relocated_scan(ImpurityKind.SQUARED_ERROR, rest, code, cnt[code] - 1.0, s[code] - v,
                                      ss[code] - v * v, cfg.min_leaf)
            terms[i], split = left_out_term(v, scan, at, float(n - 1), total_s - v)
            any_split |= split
    return LooScore.from_terms(terms, any_split)

def loo_score_numeric_regression(x, y, cfg: LooConfig) -> LooScore:
    x, y = prepare_inputs(x, y, ImpurityKind.SQUARED_ERROR, False)
    n = y.size
    order = np.argsort(x, kind="stable")
    xs = x[order]
    stat = (y - y.mean())[order]
    prefix_s = np.concatenate(([0.0], np.cumsum(stat)))
    prefix_ss = np.concatenate(([0.0], np.cumsum(stat * stat)))
    remaining = n - 1

    terms = np.empty(n)
    if n < 3:
        terms[order] = (stat - (prefix_s[-1] - stat) / remaining) ** 2
        return LooScore.from_terms(terms, False)

    m = np.arange(1, n - 1)
    block = max(1, BLOCK_CELLS // m.size)
    any_split = False
    for start in range(0, n, block):
        r = np.arange(start, min(n, start + block))
        rc = r[:, None]
        v = stat[rc]
        before, at, after = m < rc, m == rc, m > rc
        # left side statistics: the first m remaining rows, skipping the removed one
        sl = np.where(after, prefix_s[m + 1] - v, prefix_s[m])
        ssl = np.where(after, prefix_ss[m + 1] - v * v, prefix_ss[m])
        tot_s = prefix_s[-1] - v
        tot_ss = prefix_ss[-1] - v * v
        a = np.where(before, m - 1, np.where(at, rc - 1, m))
        b = np.where(before, m, np.where(at, rc + 1, m + 1))
        feasible = (xs[a] != xs[b]) & (m >= cfg.min_leaf) & (remaining - m >= cfg.min_leaf)
        values = split_impurity(ImpurityKind.SQUARED_ERROR, m, sl, ssl, remaining - m, tot_s - sl, tot_ss - ssl)
        values = np.where(feasible, values, np.inf)

        best = values.min(axis=1)
        found = np.isfinite(best)
        node_value = sse_total(remaining, tot_s[:, 0], tot_ss[:, 0])
        bound = best + settings.SPLIT_TIE_RTOL * (np.abs(best) + np.abs(node_value))
        pick = np.argmax(values <= bound[:, None], axis=1)

        rows = np.arange(r.size)
        left_n = m[pick]
        left_s = sl[rows, pick]
        lo, hi = xs[a[rows, pick]], xs[b[rows, pick]]
        threshold = lo + (hi - lo) / 2.0
        threshold = np.where(threshold >= hi, lo, threshold)
        with np.errstate(divide='ignore', invalid='ignore'):
            mean = np.where(xs[r] <= threshold, left_s / left_n,
                            (tot_s[:, 0] - left_s) / (remaining - left_n))
        mean = np.where(found, mean, tot_s[:, 0] / remaining)
        terms[order[r]] = (stat[r] - mean) ** 2
        any_split |= bool(found.any())
    logger.debug(f"numeric squared-error LOO over {n} rows, split found: {any_split}")
    return LooScore.from_terms(terms, any_split)
