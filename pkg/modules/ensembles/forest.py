"""
Random forests of unpruned CART or LOO-selected trees
"""
import logging
import math
from dataclasses import dataclass, asdict
from typing import Optional, Dict, Any, Tuple

import numpy as np
from joblib import Parallel, delayed

from modules.config.settings import settings
from modules.config.utils import derive_seed
from modules.dataio.dataset import Dataset
from modules.trees.builder import GrowConfig, Selector, grow_tree
from modules.trees.model import TreeModel
from .model import EnsembleModel, EnsembleKind
from .exceptions import EnsembleConfigError

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class RfConfig:
    """
    Random forest settings

    Attributes:
        trees: number of members
        bootstrap: draw n rows with replacement per member (off: every member sees all rows)
        max_features: m_try; None gives ceil(sqrt(p)) for classification, ceil(p/3) for regression
        selector: member variable selection
        stop_margin, stop_z, lookahead_z: LOO stop rule of LOO members
        seed: master seed; member i uses derive_seed(seed, i)
    """
    trees: int = settings.RF_TREES
    bootstrap: bool = True
    max_features: Optional[int] = None
    selector: Selector = Selector.CART
    min_leaf: int = 1
    min_node: int = 2
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
        if self.trees < 1:
            raise EnsembleConfigError("trees must be at least 1")

    def m_try(self, d: Dataset) -> int:
        if self.max_features is not None:
            if not 1 <= self.max_features <= d.p:
                raise EnsembleConfigError(f"max_features must lie in [1, {d.p}], got {self.max_features}")
            return self.max_features
        if d.is_classification:
            return max(1, math.ceil(math.sqrt(d.p)))
        return max(1, math.ceil(d.p / 3))

    def tree_config(self, m_try: int, seed: int) -> GrowConfig:
        return GrowConfig(selector=self.selector, max_depth=self.max_depth, min_leaf=self.min_leaf,
                          min_node=self.min_node, max_categories=self.max_categories,
                          use_stopping_rule=self.use_stopping_rule, stop_margin=self.stop_margin, stop_z=self.stop_z,
                          lookahead_z=self.lookahead_z, max_features=m_try, seed=seed)

    def to_dict(self) -> Dict[str, Any]:
        doc = asdict(self)
        doc['selector'] = self.selector.value
        doc.pop('n_jobs')
        return doc

def bootstrap_sample(n: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Rows drawn with replacement and the out-of-bag rows absent from the draw"""
    sample = np.random.default_rng(seed).integers(0, n, size=n)
    oob = np.setdiff1d(np.arange(n), sample)
    return sample, oob

def _fit_member(d: Dataset, cfg: RfConfig, m_try: int, index: int) -> Tuple[TreeModel, int, np.ndarray]:
    seed = derive_seed(cfg.seed, index)
    if cfg.bootstrap:
        sample, oob = bootstrap_sample(d.n, seed)
        train = d.subset(sample, allow_repeats=True)
    else:
        oob = np.empty(0, dtype=np.int64)
        train = d
    return grow_tree(train, cfg.tree_config(m_try, seed)), seed, oob

def fit_random_forest(d: Dataset, cfg: RfConfig = None) -> EnsembleModel:
    cfg = cfg or RfConfig()
    if d.n < 2:
        raise EnsembleConfigError(f"A random forest needs at least 2 rows, got {d.n}")
    m_try = cfg.m_try(d)
    if cfg.n_jobs == 1:
        fitted = [_fit_member(d, cfg, m_try, i) for i in range(cfg.trees)]
    else:
        fitted = Parallel(n_jobs=cfg.n_jobs)(delayed(_fit_member)(d, cfg, m_try, i) for i in range(cfg.trees))

    members, seeds, oob = zip(*fitted)
    model = EnsembleModel(kind=EnsembleKind.RANDOM_FOREST, task=d.task, members=tuple(members),
                          seeds=tuple(seeds), schema_fingerprint=d.schema.fingerprint,
                          feature_names=tuple(d.feature_names), dictionaries=tuple(d.dictionaries),
                          config=cfg.to_dict(), oob_rows=tuple(oob))
    logger.info(f"Fit random forest: {cfg.trees} {cfg.selector.value} trees, m_try={m_try}, "
                f"bootstrap={'on' if cfg.bootstrap else 'off'}")
    return model
