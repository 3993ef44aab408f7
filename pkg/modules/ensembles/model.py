"""
Fitted ensembles of trees
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Optional, Dict, Any, List

import numpy as np
from scipy.special import expit

from modules.dataio.dataset import Dataset, Task
from modules.trees.model import TreeModel, prepare_features

class EnsembleKind(str, Enum):
    GRADIENT_BOOSTING = "gb"
    RANDOM_FOREST = "rf"

class GbLoss(str, Enum):
    SQUARED_ERROR = "squared-error"
    DEVIANCE = "deviance"

@dataclass(frozen=True, eq=False)
class EnsembleModel:
    """
    Boosted sum or forest average of member trees

    Boosting: prediction = base + ν·Σ member outputs, passed through the
    logistic function for deviance. Forest: mean of member outputs; each
    member keeps its seed and its out-of-bag rows.
    """
    kind: EnsembleKind
    task: Task
    members: Tuple[TreeModel, ...]
    seeds: Tuple[int, ...]
    schema_fingerprint: str
    feature_names: Tuple[str, ...]
    dictionaries: Tuple[Optional[Tuple[str, ...]], ...]
    config: Dict[str, Any] = field(default_factory=dict)
    base: float = 0.0
    learning_rate: float = 1.0
    loss: Optional[GbLoss] = None
    oob_rows: Tuple[np.ndarray, ...] = ()

    @property
    def n_members(self) -> int:
        return len(self.members)

    def prepare(self, d: Dataset) -> List[np.ndarray]:
        return prepare_features(d, self.schema_fingerprint, self.feature_names, self.dictionaries)

    def raw_predict(self, features: List[np.ndarray], n: int) -> np.ndarray:
        """Boosting score before the link (log-odds for deviance), or the forest average"""
        if self.kind == EnsembleKind.GRADIENT_BOOSTING:
            score = np.full(n, self.base)
            for tree in self.members:
                score += self.learning_rate * tree.predict_features(features, n)
            return score
        total = np.zeros(n)
        for tree in self.members:
            total += tree.predict_features(features, n)
        return total / len(self.members)

    def predict_features(self, features: List[np.ndarray], n: int) -> np.ndarray:
        score = self.raw_predict(features, n)
        if self.loss == GbLoss.DEVIANCE:
            return expit(score)
        return score

    def predict(self, d: Dataset) -> np.ndarray:
        """Mean response, or class-1 probability for classification"""
        return self.predict_features(self.prepare(d), d.n)

    def predict_class(self, d: Dataset) -> np.ndarray:
        return (self.predict(d) > 0.5).astype(np.int64)
