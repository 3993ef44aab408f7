"""
CART single-variable split search

Numeric features: sort once, then scan every cut between adjacent distinct
values with prefix statistics. Categorical features: sort the occupied
categories by mean response (ties by code) and scan the prefixes of that
sequence, which is optimal for both criteria. The exhaustive subset search
is kept as a reference.
"""
import logging
from typing import NamedTuple, Optional, Tuple

import numpy as np

from modules.config.settings import settings
from modules.dataio.dataset import Dataset
from .impurity import (ImpurityKind, split_impurity, side_impurity, node_impurity, pick_first_min,
                       check_binary)
from .rules import SplitRule, SplitSearchResult, midpoint
from .exceptions import SplitInputError, ExhaustiveSearchRefused

logger = logging.getLogger(__name__)

class PrefixScan(NamedTuple):
    """Outcome of scanning the candidate cuts of one ordered sequence"""
    position: int          # index of the chosen cut, -1 when no cut is feasible
    value: float           # ℒ at the chosen cut (node value when none)
    node_value: float      # impurity of the whole sequence
    left_n: float
    left_s: float
    total_n: float
    total_s: float

def _prepare(x, y, kind: ImpurityKind, min_leaf: int) -> Tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise SplitInputError(f"Feature and response lengths differ ({x.shape} vs {y.shape})")
    if y.size == 0:
        raise SplitInputError("Cannot search splits of an empty node")
    if min_leaf < 1:
        raise SplitInputError("min_leaf must be at least 1")
    if kind == ImpurityKind.GINI:
        check_binary(y)
    return x, y

def response_statistic(y: np.ndarray, kind: ImpurityKind) -> np.ndarray:
    """Response as scanned: 0/1 counts for gini, centered values for squared error"""
    if kind == ImpurityKind.GINI:
        return y
    return y - y.mean()

def scan_prefixes(kind: ImpurityKind, cnt: np.ndarray, s: np.ndarray, ss: np.ndarray,
                  valid: np.ndarray, min_leaf: int) -> PrefixScan:
    """
    Scan cuts after each prefix of an ordered sequence of groups

    Args:
        cnt, s, ss: per-group count, sum and sum of squares in scan order
        valid: per-cut flag (length len(cnt) − 1) for cuts allowed besides min_leaf

    Returns:
        PrefixScan with the first cut tied with the minimum
    """
    cl = np.cumsum(cnt)
    sl = np.cumsum(s)
    ssl = np.cumsum(ss)
    total_n, total_s, total_ss = cl[-1], sl[-1], ssl[-1]
    node_value = float(side_impurity(kind, total_n, total_s, total_ss))
    lc, ls, lss = cl[:-1], sl[:-1], ssl[:-1]
    values = split_impurity(kind, lc, ls, lss, total_n - lc, total_s - ls, total_ss - lss)
    feasible = valid & (lc >= min_leaf) & (total_n - lc >= min_leaf)
    values = np.where(feasible, values, np.inf)
    position = pick_first_min(values, kind, node_value)
    if position < 0:
        return PrefixScan(-1, node_value, node_value, 0.0, 0.0, float(total_n), float(total_s))
    return PrefixScan(position, float(values[position]), node_value, float(lc[position]),
                      float(ls[position]), float(total_n), float(total_s))

def scan_sorted_numeric(kind: ImpurityKind, xs: np.ndarray, stat: np.ndarray, min_leaf: int) -> PrefixScan:
    """Scan the cuts of x-sorted rows; a cut is allowed only between distinct values"""
    ones = np.ones_like(stat)
    return scan_prefixes(kind, ones, stat, stat * stat, xs[:-1] != xs[1:], min_leaf)

def best_split_numeric(x, y, kind: ImpurityKind, min_leaf: int = 1, feature: int = 0) -> SplitSearchResult:
    """
    Best threshold split of a numeric feature

    Minimizes ℒ(s) over midpoints between adjacent distinct sorted values,
    subject to min_leaf rows per side; ties go to the smallest threshold.
    """
    x, y = _prepare(x, y, kind, min_leaf)
    x = x.astype(np.float64)
    node = node_impurity(y, kind)
    if y.size < 2:
        return SplitSearchResult(None, node, node)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    scan = scan_sorted_numeric(kind, xs, response_statistic(y[order], kind), min_leaf)
    if scan.position < 0:
        return SplitSearchResult(None, node, node)
    i = scan.position
    rule = SplitRule(feature, threshold=midpoint(xs[i], xs[i + 1]))
    return SplitSearchResult(rule, scan.value, node)

def category_statistics(codes: np.ndarray, stat: np.ndarray, n_categories: int):
    """Per-category count, sum and sum of squares"""
    cnt = np.bincount(codes, minlength=n_categories).astype(np.float64)
    s = np.bincount(codes, weights=stat, minlength=n_categories)
    ss = np.bincount(codes, weights=stat * stat, minlength=n_categories)
    return cnt, s, ss

def sort_categories(codes: np.ndarray, cnt: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Category codes ordered by mean statistic, ties by code"""
    codes = np.asarray(codes, dtype=np.int64)
    means = s[codes] / cnt[codes]
    return codes[np.lexsort((codes, means))]

def _n_categories(codes: np.ndarray, n_categories: Optional[int]) -> int:
    if codes.size and codes.min() < 0:
        raise SplitInputError("Category codes must be non-negative")
    needed = int(codes.max()) + 1 if codes.size else 0
    if n_categories is None:
        return needed
    if n_categories < needed:
        raise SplitInputError(f"Code {needed - 1} exceeds the {n_categories} declared categories")
    return n_categories

def best_split_categorical(x, y, kind: ImpurityKind, min_leaf: int = 1, feature: int = 0,
                           n_categories: int = None) -> SplitSearchResult:
    """
    Best binary partition of a categorical feature by the sorted-mean scan

    The occupied categories are ordered by mean response (ties by code) and
    the K−1 prefix splits of that order are scanned; the left-set is the
    low-mean prefix, ties between prefixes go to the shorter one.
    """
    x, y = _prepare(x, y, kind, min_leaf)
    codes = x.astype(np.int64)
    k = _n_categories(codes, n_categories)
    node = node_impurity(y, kind)
    stat = response_statistic(y, kind)
    cnt, s, ss = category_statistics(codes, stat, k)
    occupied = np.flatnonzero(cnt > 0)
    if occupied.size < 2:
        return SplitSearchResult(None, node, node)
    seq = sort_categories(occupied, cnt, s)
    scan = scan_prefixes(kind, cnt[seq], s[seq], ss[seq], np.ones(seq.size - 1, dtype=bool), min_leaf)
    if scan.position < 0:
        return SplitSearchResult(None, node, node)
    rule = SplitRule(feature, left_categories=frozenset(seq[:scan.position + 1].tolist()))
    return SplitSearchResult(rule, scan.value, node)

def best_split_exhaustive_categorical(x, y, kind: ImpurityKind, min_leaf: int = 1, feature: int = 0,
                                      n_categories: int = None) -> SplitSearchResult:
    """
    Best binary partition of a categorical feature over all proper subsets

    Enumerates the 2^(K−1)−1 partitions of the K occupied categories; every
    candidate left-set contains the lowest occupied code, which makes the
    result canonical. Refuses K above MAX_EXHAUSTIVE_CATEGORIES.
    """
    x, y = _prepare(x, y, kind, min_leaf)
    codes = x.astype(np.int64)
    k = _n_categories(codes, n_categories)
    node = node_impurity(y, kind)
    stat = response_statistic(y, kind)
    cnt, s, ss = category_statistics(codes, stat, k)
    occupied = np.flatnonzero(cnt > 0)
    m = occupied.size
    if m > settings.MAX_EXHAUSTIVE_CATEGORIES:
        raise ExhaustiveSearchRefused(
            f"{m} occupied categories exceed the exhaustive limit of {settings.MAX_EXHAUSTIVE_CATEGORIES}")
    if m < 2:
        return SplitSearchResult(None, node, node)

    first, rest = occupied[0], occupied[1:]
    masks = np.arange((1 << (m - 1)) - 1, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(m - 1)) & 1).astype(np.float64)
    nl = cnt[first] + bits @ cnt[rest]
    sl = s[first] + bits @ s[rest]
    ssl = ss[first] + bits @ ss[rest]
    total_n, total_s, total_ss = cnt.sum(), s.sum(), ss.sum()
    values = split_impurity(kind, nl, sl, ssl, total_n - nl, total_s - sl, total_ss - ssl)
    values = np.where((nl >= min_leaf) & (total_n - nl >= min_leaf), values, np.inf)
    best = pick_first_min(values, kind, node)
    if best < 0:
        return SplitSearchResult(None, node, node)
    left = {int(first)} | {int(c) for c, bit in zip(rest, bits[best]) if bit}
    return SplitSearchResult(SplitRule(feature, left_categories=frozenset(left)), float(values[best]), node)

def best_split(x, y, kind: ImpurityKind, categorical: bool, min_leaf: int = 1, feature: int = 0,
               n_categories: int = None) -> SplitSearchResult:
    """Dispatch to the numeric or categorical search"""
    if categorical:
        return best_split_categorical(x, y, kind, min_leaf, feature, n_categories)
    return best_split_numeric(x, y, kind, min_leaf, feature)

def apply_split(rule: SplitRule, d: Dataset) -> Tuple[np.ndarray, np.ndarray]:
    """Left and right row positions of a dataset view under a rule"""
    if not 0 <= rule.feature < d.p:
        raise SplitInputError(f"Rule feature {rule.feature} not present in a dataset with {d.p} features")
    mask = rule.goes_left(d.feature(rule.feature))
    return np.flatnonzero(mask), np.flatnonzero(~mask)
