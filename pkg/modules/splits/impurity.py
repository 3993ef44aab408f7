"""
Impurity criteria as totals over a node

Both criteria are computed from sufficient statistics (count, sum, sum of
squares). Gini totals are formed from integer counts by a single expression
so that any two code paths evaluating the same counts agree bit for bit.
"""
from enum import Enum

import numpy as np

from modules.config.settings import settings
from .exceptions import SplitInputError

class ImpurityKind(str, Enum):
    """Supported impurity criteria"""
    GINI = "gini"
    SQUARED_ERROR = "sse"

    @classmethod
    def parse(cls, text) -> 'ImpurityKind':
        if isinstance(text, cls):
            return text
        aliases = {"gini": cls.GINI, "sse": cls.SQUARED_ERROR, "squared-error": cls.SQUARED_ERROR,
                   "squared_error": cls.SQUARED_ERROR}
        try:
            return aliases[str(text).lower()]
        except KeyError:
            raise SplitInputError(f"Unknown impurity '{text}' (expected gini or sse)")

def gini_total(n, k):
    """n·p̂(1−p̂) written as k(n−k)/n, with k the count of class 1"""
    return k * (n - k) / n

def sse_total(n, s, ss):
    """Σ(y − ȳ)² from count, sum and sum of squares (clipped at zero)"""
    return np.maximum(ss - s * s / n, 0.0)

def side_impurity(kind: ImpurityKind, n, s, ss):
    if kind == ImpurityKind.GINI:
        return gini_total(n, s)
    return sse_total(n, s, ss)

def split_impurity(kind: ImpurityKind, nl, sl, ssl, nr, sr, ssr):
    """ℒ(s) for a binary split given the statistics of both sides"""
    with np.errstate(divide='ignore', invalid='ignore'):
        return side_impurity(kind, nl, sl, ssl) + side_impurity(kind, nr, sr, ssr)

def check_binary(y: np.ndarray):
    if y.size and not np.all((y == 0.0) | (y == 1.0)):
        raise SplitInputError("Gini impurity requires a response coded 0/1")

def node_impurity(y, kind: ImpurityKind) -> float:
    """Total impurity of a node: n·p̂(1−p̂) for gini, Σ(y − ȳ)² for squared error"""
    y = np.asarray(y, dtype=np.float64)
    if y.size == 0:
        raise SplitInputError("Cannot compute the impurity of an empty node")
    if kind == ImpurityKind.GINI:
        check_binary(y)
        return float(gini_total(float(y.size), float(y.sum())))
    return float(np.sum((y - y.mean()) ** 2))

def tie_tolerance(kind: ImpurityKind, best: float, node_value: float) -> float:
    if kind == ImpurityKind.GINI:
        return 0.0
    return settings.SPLIT_TIE_RTOL * (abs(best) + abs(node_value))

def pick_first_min(values: np.ndarray, kind: ImpurityKind, node_value: float) -> int:
    """Index of the first candidate tied with the minimum, or -1 when none is finite"""
    if values.size == 0:
        return -1
    best = values.min()
    if not np.isfinite(best):
        return -1
    bound = best + tie_tolerance(kind, float(best), node_value)
    return int(np.argmax(values <= bound))
