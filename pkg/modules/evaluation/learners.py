"""
Learner specifications used by the evaluation drivers

A LearnerSpec names one way of fitting a predictor (a single tree grown by
CART or LOO selection, an ensemble, or a reference learner) and fits it on
a dataset with a given seed.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Tuple, Optional, Protocol

import numpy as np

from modules.config.settings import settings
from modules.dataio.dataset import Dataset
from modules.ensembles.boosting import GbConfig, fit_gradient_boosting
from modules.ensembles.forest import RfConfig, fit_random_forest
from modules.trees.builder import GrowConfig, Selector, grow_tree
from modules.trees.pruning import prune_cost_complexity
from .exceptions import EvaluationError

class Predictor(Protocol):
    def predict(self, d: Dataset) -> np.ndarray: ...

class LearnerKind(str, Enum):
    CART = "cart"
    CART_UNPRUNED = "cart-unpruned"
    ALOOF = "aloof"
    GRADIENT_BOOSTING = "gb"
    RANDOM_FOREST = "rf"
    MEAN = "mean"
    LEAST_SQUARES = "least-squares"

@dataclass(frozen=True)
class MeanPredictor:
    """Predicts the training mean for every row"""
    value: float

    def predict(self, d: Dataset) -> np.ndarray:
        return np.full(d.n, self.value)

@dataclass(frozen=True, eq=False)
class LeastSquaresPredictor:
    """Linear least squares on the numeric features"""
    features: Tuple[int, ...]
    coefficients: np.ndarray
    intercept: bool

    def design(self, d: Dataset) -> np.ndarray:
        columns = [d.feature(j) for j in self.features]
        if self.intercept:
            columns.insert(0, np.ones(d.n))
        return np.column_stack(columns) if columns else np.empty((d.n, 0))

    def predict(self, d: Dataset) -> np.ndarray:
        return self.design(d) @ self.coefficients

    @classmethod
    def fit(cls, d: Dataset, intercept: bool = True) -> 'LeastSquaresPredictor':
        features = tuple(j for j in range(d.p) if not d.column(j).is_categorical)
        template = cls(features, np.empty(0), intercept)
        x = template.design(d)
        if x.shape[1] == 0:
            raise EvaluationError("Least squares needs at least one numeric feature or an intercept")
        coefficients, *_ = np.linalg.lstsq(x, d.y, rcond=None)
        return cls(features, coefficients, intercept)

@dataclass(frozen=True)
class FeatureSubsetPredictor:
    """A model fit without some features, applied after dropping them"""
    model: Predictor
    dropped: Tuple[str, ...]

    def predict(self, d: Dataset) -> np.ndarray:
        return self.model.predict(d.drop_features(self.dropped))

@dataclass(frozen=True)
class LearnerSpec:
    """
    A named way to fit a predictor

    Attributes:
        kind: learner family
        label: report label (kind by default)
        grow: tree settings for single trees
        gb, rf: ensemble settings
        prune_folds: CV folds of the pruning step (cart)
        drop_features: features removed before fitting (e.g. the oracle
            learner that never sees an uninformative categorical)
        intercept: least-squares intercept
    """
    kind: LearnerKind
    label: str = ""
    grow: GrowConfig = field(default_factory=GrowConfig)
    gb: GbConfig = field(default_factory=GbConfig)
    rf: RfConfig = field(default_factory=RfConfig)
    prune_folds: int = settings.PRUNE_FOLDS
    drop_features: Tuple[str, ...] = ()
    intercept: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'kind', LearnerKind(self.kind))
        object.__setattr__(self, 'drop_features', tuple(self.drop_features))

    @property
    def name(self) -> str:
        return self.label or self.kind.value

    @property
    def min_rows(self) -> int:
        """Fewest training rows the learner accepts"""
        if self.kind in (LearnerKind.CART, LearnerKind.CART_UNPRUNED, LearnerKind.ALOOF):
            return self.grow.min_node
        if self.kind == LearnerKind.MEAN:
            return 1
        return 2

    def fit(self, d: Dataset, seed: int = 0) -> Predictor:
        if d.n < self.min_rows:
            raise EvaluationError(f"{self.name} needs at least {self.min_rows} rows, got {d.n}")
        train = d.drop_features(self.drop_features) if self.drop_features else d
        model = self._fit(train, seed)
        return FeatureSubsetPredictor(model, self.drop_features) if self.drop_features else model

    def _fit(self, d: Dataset, seed: int) -> Predictor:
        kind = self.kind
        if kind == LearnerKind.CART:
            tree = grow_tree(d, replace(self.grow, selector=Selector.CART, seed=seed))
            return prune_cost_complexity(tree, d, self.prune_folds, seed)
        if kind == LearnerKind.CART_UNPRUNED:
            return grow_tree(d, replace(self.grow, selector=Selector.CART, seed=seed))
        if kind == LearnerKind.ALOOF:
            return grow_tree(d, replace(self.grow, selector=Selector.ALOOF, seed=seed))
        if kind == LearnerKind.GRADIENT_BOOSTING:
            return fit_gradient_boosting(d, replace(self.gb, seed=seed))
        if kind == LearnerKind.RANDOM_FOREST:
            return fit_random_forest(d, replace(self.rf, seed=seed))
        if kind == LearnerKind.MEAN:
            return MeanPredictor(float(d.y.mean()))
        return LeastSquaresPredictor.fit(d, self.intercept)

    @classmethod
    def cart(cls, max_categories: Optional[int] = None, pruned: bool = True, label: str = "", **grow) -> 'LearnerSpec':
        kind = LearnerKind.CART if pruned else LearnerKind.CART_UNPRUNED
        return cls(kind, label, grow=GrowConfig(max_categories=max_categories, **grow))

    @classmethod
    def limited_k(cls, label: str = "cart-limited-k", **grow) -> 'LearnerSpec':
        return cls.cart(max_categories=settings.LIMITED_K, label=label, **grow)

    @classmethod
    def aloof(cls, label: str = "", **grow) -> 'LearnerSpec':
        return cls(LearnerKind.ALOOF, label, grow=GrowConfig(selector=Selector.ALOOF, **grow))
