"""
Leave-one-out selection of splitting variables
"""
from .config import LooConfig, LooScore, LooScoreTable, Selection
from .naive import loo_baseline, loo_baseline_terms, loo_score_naive
from .classification import loo_score_categorical_classification, loo_score_numeric_classification
from .regression import loo_score_categorical_regression, loo_score_numeric_regression
from .lfold import lfold_score, lfold_baseline, lfold_baseline_terms
from .selection import score_feature, score_table, improves, select_variable
from .segment_tree import MinSegmentTree
from .exceptions import LooError, LooInputError

__all__ = ['LooConfig', 'LooScore', 'LooScoreTable', 'Selection', 'loo_baseline', 'loo_baseline_terms',
           'loo_score_naive', 'loo_score_categorical_classification', 'loo_score_numeric_classification',
           'loo_score_categorical_regression', 'loo_score_numeric_regression', 'lfold_score',
           'lfold_baseline', 'lfold_baseline_terms', 'score_feature', 'score_table', 'improves',
           'select_variable', 'MinSegmentTree', 'LooError', 'LooInputError']
