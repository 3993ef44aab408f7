"""
Out-of-bag permutation importance for random forests
"""
import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np
from joblib import Parallel, delayed

from modules.config.utils import derive_rng
from modules.dataio.dataset import Dataset
from modules.trees.model import TreeModel
from .model import EnsembleModel, EnsembleKind
from .exceptions import EnsembleConfigError

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class FeatureImportance:
    feature: int
    name: str
    score: float
    stderr: float

@dataclass(frozen=True)
class ImportanceReport:
    """Features ranked by decreasing importance (ties by feature index)"""
    features: List[FeatureImportance]
    trees: int

    def top(self, k: int) -> List[FeatureImportance]:
        return self.features[:k]

    def as_rows(self) -> List[dict]:
        return [{"rank": rank + 1, "feature": f.name, "score": f.score, "stderr": f.stderr}
                for rank, f in enumerate(self.features)]

def _loss(y: np.ndarray, prediction: np.ndarray, classification: bool) -> float:
    if classification:
        return float(np.mean((prediction > 0.5) != (y > 0.5)))
    return float(np.mean((y - prediction) ** 2))

def _tree_deltas(tree: TreeModel, features: List[np.ndarray], y: np.ndarray, oob: np.ndarray,
                 classification: bool, seed: int, index: int) -> np.ndarray:
    """Per-feature OOB loss increase of one member when that feature's OOB values are permuted"""
    p = len(features)
    deltas = np.zeros(p)
    if oob.size == 0:
        return deltas
    rng = derive_rng(seed, index)
    own = [f[oob] for f in features]
    y_oob = y[oob]
    base = _loss(y_oob, tree.predict_features(own, oob.size), classification)
    used = tree.used_features()
    for j in range(p):
        permutation = rng.permutation(oob.size)
        if j not in used:
            continue
        shuffled = list(own)
        shuffled[j] = own[j][permutation]
        deltas[j] = _loss(y_oob, tree.predict_features(shuffled, oob.size), classification) - base
    return deltas

def oob_permutation_importance(m: EnsembleModel, d: Dataset, seed: int = 0, n_jobs: int = 1) -> ImportanceReport:
    """
    Mean over members of the OOB loss increase from permuting one feature

    Loss is mean squared error for regression and misclassification rate for
    classification. Features used by no member score exactly 0.

    Args:
        m: forest fit with bootstrap on
        d: the forest's training data (OOB rows index into it)
        seed: permutation seed
    """
    if m.kind != EnsembleKind.RANDOM_FOREST:
        raise EnsembleConfigError("OOB importance needs a random forest")
    if not m.config.get("bootstrap", True):
        raise EnsembleConfigError("OOB importance needs a forest fit with bootstrap on")
    if any(oob.size and oob.max() >= d.n for oob in m.oob_rows):
        raise EnsembleConfigError("OOB rows fall outside the dataset; pass the forest's training data")
    features = m.prepare(d)
    y = d.y
    classification = d.is_classification
    jobs = [(tree, features, y, oob, classification, seed, i) for i, (tree, oob) in enumerate(zip(m.members, m.oob_rows))]
    if n_jobs == 1:
        deltas = [_tree_deltas(*job) for job in jobs]
    else:
        deltas = Parallel(n_jobs=n_jobs)(delayed(_tree_deltas)(*job) for job in jobs)
    per_tree = np.vstack(deltas)

    scores = per_tree.mean(axis=0)
    trees = per_tree.shape[0]
    stderr = per_tree.std(axis=0, ddof=1) / math.sqrt(trees) if trees > 1 else np.zeros(d.p)
    order = sorted(range(d.p), key=lambda j: (-scores[j], j))
    ranked = [FeatureImportance(j, m.feature_names[j], float(scores[j]), float(stderr[j])) for j in order]
    logger.info(f"OOB importance over {trees} trees; top feature {ranked[0].name if ranked else '-'}")
    return ImportanceReport(ranked, trees)
