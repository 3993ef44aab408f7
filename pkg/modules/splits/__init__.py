"""
CART impurity criteria and single-variable split search
"""
from .impurity import ImpurityKind, node_impurity, split_impurity, gini_total, sse_total
from .rules import SplitRule, SplitSearchResult, midpoint
from .search import (best_split, best_split_numeric, best_split_categorical,
                     best_split_exhaustive_categorical, apply_split)
from .exceptions import SplitError, SplitInputError, ExhaustiveSearchRefused

__all__ = ['ImpurityKind', 'node_impurity', 'split_impurity', 'gini_total', 'sse_total',
           'SplitRule', 'SplitSearchResult', 'midpoint', 'best_split', 'best_split_numeric',
           'best_split_categorical', 'best_split_exhaustive_categorical', 'apply_split',
           'SplitError', 'SplitInputError', 'ExhaustiveSearchRefused']
