"""
Stagewise gradient boosting of regression trees

Each stage fits a regression tree, grown by CART or LOO selection without
pruning, to the negative gradient of the loss and adds it with shrinkage.
Squared error starts at the mean. Binomial deviance starts at the
log-odds of the class-1 rate and replaces every leaf value by a Newton step.
"""
import logging
import math
from dataclasses import dataclass, asdict, replace
from typing import Optional, Dict, Any

import numpy as np
from scipy.special import expit, logit

from modules.config.settings import settings
from modules.config.utils import derive_seed
from modules.dataio.dataset import Dataset, Task
from modules.splits.impurity import ImpurityKind
from modules.trees.builder import GrowConfig, Selector, grow_tree
from modules.trees.model import TreeModel, replace_leaf_values
from .model import EnsembleModel, EnsembleKind, GbLoss
from .exceptions import EnsembleConfigError

logger = logging.getLogger(__name__)

PROBABILITY_CLIP = 1e-12

@dataclass(frozen=True)
class GbConfig:
    """
    Gradient boosting settings

    Attributes:
        trees: number of stages
        learning_rate: shrinkage ν in (0, 1]
        min_node_fraction: terminal nodes hold at least ceil(fraction·n) rows
        selector: sub-learner variable selection
        loss: None picks deviance for classification, squared error otherwise
        max_depth, max_categories: sub-learner limits
        use_stopping_rule: LOO stopping inside LOO sub-learners
        stop_margin, stop_z, lookahead_z: LOO stop rule of the sub-learners
        seed: master seed; stage m uses derive_seed(seed, m)
    """
    trees: int = settings.GB_TREES
    learning_rate: float = settings.GB_LEARNING_RATE
    min_node_fraction: float = settings.GB_MIN_NODE_FRACTION
    selector: Selector = Selector.CART
    loss: Optional[GbLoss] = None
    max_depth: Optional[int] = None
    max_categories: Optional[int] = None
    use_stopping_rule: bool = True
    stop_margin: float = 0.0
    stop_z: float = settings.LOO_STOP_Z
    lookahead_z: float = settings.LOO_LOOKAHEAD_Z
    seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'selector', Selector(self.selector))
        if self.loss is not None:
            object.__setattr__(self, 'loss', GbLoss(self.loss))
        if self.trees < 1:
            raise EnsembleConfigError("trees must be at least 1")
        if not 0 < self.learning_rate <= 1:
            raise EnsembleConfigError("learning_rate must lie in (0, 1]")
        if not 0 < self.min_node_fraction <= 0.5:
            raise EnsembleConfigError("min_node_fraction must lie in (0, 0.5]")

    def loss_for(self, d: Dataset) -> GbLoss:
        loss = self.loss or (GbLoss.DEVIANCE if d.is_classification else GbLoss.SQUARED_ERROR)
        if loss == GbLoss.DEVIANCE and not d.is_classification:
            raise EnsembleConfigError("Binomial deviance needs a binary response")
        if loss == GbLoss.SQUARED_ERROR and d.is_classification:
            raise EnsembleConfigError("Squared-error boosting needs a numeric response")
        return loss

    def tree_config(self, n: int) -> GrowConfig:
        min_leaf = max(1, math.ceil(self.min_node_fraction * n))
        return GrowConfig(selector=self.selector, kind=ImpurityKind.SQUARED_ERROR, max_depth=self.max_depth,
                          min_leaf=min_leaf, min_node=2 * min_leaf, max_categories=self.max_categories,
                          use_stopping_rule=self.use_stopping_rule, stop_margin=self.stop_margin, stop_z=self.stop_z,
                          lookahead_z=self.lookahead_z, seed=self.seed, n_jobs=self.n_jobs)

    def to_dict(self) -> Dict[str, Any]:
        doc = asdict(self)
        doc['selector'] = self.selector.value
        doc['loss'] = self.loss.value if self.loss is not None else None
        doc.pop('n_jobs')
        return doc

def _newton_leaves(tree: TreeModel, pseudo: Dataset, probability: np.ndarray) -> TreeModel:
    """Leaf value Σ residual / Σ p(1 − p) over the leaf's rows"""
    residual = pseudo.y
    weight = probability * (1.0 - probability)
    leaves = tree.root.leaves()
    position = {id(leaf): i for i, leaf in enumerate(leaves)}
    index = np.array([position[id(leaf)] for leaf in tree.apply(pseudo)])
    numerator = np.bincount(index, weights=residual, minlength=len(leaves))
    denominator = np.bincount(index, weights=weight, minlength=len(leaves))
    values = {i: (numerator[i] / denominator[i] if denominator[i] > 0 else 0.0) for i in range(len(leaves))}
    return replace_leaf_values(tree, values)

def fit_gradient_boosting(d: Dataset, cfg: GbConfig = None) -> EnsembleModel:
    cfg = cfg or GbConfig()
    loss = cfg.loss_for(d)
    y = d.y
    if loss == GbLoss.DEVIANCE:
        base = float(logit(np.clip(y.mean(), PROBABILITY_CLIP, 1 - PROBABILITY_CLIP)))
    else:
        base = float(y.mean())

    members, seeds = [], []
    if np.ptp(y) > 0:
        tree_cfg = cfg.tree_config(d.n)
        features = d.feature_matrix()
        score = np.full(d.n, base)
        for m in range(cfg.trees):
            probability = expit(score) if loss == GbLoss.DEVIANCE else None
            residual = y - (probability if loss == GbLoss.DEVIANCE else score)
            pseudo = d.with_response(residual, Task.REGRESSION)
            seed = derive_seed(cfg.seed, m)
            tree = grow_tree(pseudo, replace(tree_cfg, seed=seed))
            if loss == GbLoss.DEVIANCE:
                tree = _newton_leaves(tree, pseudo, probability)
            score = score + cfg.learning_rate * tree.predict_features(features, d.n)
            members.append(tree)
            seeds.append(seed)
    else:
        logger.info("Constant response: boosting keeps the base prediction only")

    model = EnsembleModel(kind=EnsembleKind.GRADIENT_BOOSTING, task=d.task, members=tuple(members),
                          seeds=tuple(seeds), schema_fingerprint=d.schema.fingerprint,
                          feature_names=tuple(d.feature_names), dictionaries=tuple(d.dictionaries),
                          config=cfg.to_dict(), base=base, learning_rate=cfg.learning_rate, loss=loss)
    logger.info(f"Fit gradient boosting: {len(members)} {cfg.selector.value} trees, loss={loss.value}")
    return model
