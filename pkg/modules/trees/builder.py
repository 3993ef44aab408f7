"""
Greedy tree growth with CART or leave-one-out variable selection
"""
import heapq
import logging
from dataclasses import dataclass, asdict, replace
from enum import Enum
from typing import Optional, List, Dict, Any, Tuple

import numpy as np

from modules.aloof.config import LooConfig
from modules.aloof.selection import select_variable
from modules.config.settings import settings
from modules.dataio.dataset import Dataset
from modules.splits.impurity import ImpurityKind, node_impurity, pick_first_min, tie_tolerance
from modules.splits.rules import SplitSearchResult
from modules.splits.search import best_split
from .model import TreeNode, TreeModel
from .exceptions import GrowConfigError, TreeError

logger = logging.getLogger(__name__)

class Selector(str, Enum):
    """How the splitting variable of a node is chosen"""
    CART = "cart"
    ALOOF = "aloof"

@dataclass(frozen=True)
class GrowConfig:
    """
    Tree growth settings

    Attributes:
        selector: cart (impurity argmin over all features) or aloof (LOO selection)
        kind: impurity criterion; None picks gini for classification, squared error otherwise
        max_depth: None for unlimited
        min_leaf: minimum rows per child
        min_node: nodes with fewer rows are not split
        max_categories: features with more categories are ignored (None for no limit)
        loo_folds: None for exact LOO, otherwise the L of the L-fold variant
        stop_margin: LOO stop margin
        stop_z: significance the best LOO improvement must reach (0 for the bare comparator)
        lookahead_z: significance a child must reach to keep a would-be leaf splitting (0 disables)
        use_stopping_rule: False grows LOO trees to the size limits only
        max_leaves: best-first growth up to this many leaves (cart only)
        max_features: features sampled per node (random forest); None uses all
        seed: feature sampling and L-fold assignment seed
        n_jobs: workers for LOO feature scoring
    """
    selector: Selector = Selector.CART
    kind: Optional[ImpurityKind] = None
    max_depth: Optional[int] = None
    min_leaf: int = 1
    min_node: int = 2
    max_categories: Optional[int] = None
    loo_folds: Optional[int] = None
    stop_margin: float = 0.0
    stop_z: float = settings.LOO_STOP_Z
    lookahead_z: float = settings.LOO_LOOKAHEAD_Z
    use_stopping_rule: bool = True
    max_leaves: Optional[int] = None
    max_features: Optional[int] = None
    seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'selector', Selector(self.selector))
        if self.kind is not None:
            object.__setattr__(self, 'kind', ImpurityKind.parse(self.kind))
        if self.min_leaf < 1:
            raise GrowConfigError("min_leaf must be at least 1")
        if self.min_node < 2 * self.min_leaf:
            raise GrowConfigError(f"min_node ({self.min_node}) must be at least 2·min_leaf ({2 * self.min_leaf})")
        if self.max_depth is not None and self.max_depth < 0:
            raise GrowConfigError("max_depth must be non-negative")
        if self.max_categories is not None and self.max_categories < 1:
            raise GrowConfigError("max_categories must be at least 1")
        if self.max_features is not None and self.max_features < 1:
            raise GrowConfigError("max_features must be at least 1")
        if self.max_leaves is not None:
            if self.max_leaves < 1:
                raise GrowConfigError("max_leaves must be at least 1")
            if self.selector != Selector.CART:
                raise GrowConfigError("max_leaves is only supported with the cart selector")
        if self.loo_folds is not None and self.loo_folds < 2:
            raise GrowConfigError("loo_folds must be at least 2")
        if self.stop_margin < 0 or self.stop_z < 0 or self.lookahead_z < 0:
            raise GrowConfigError("stop_margin, stop_z and lookahead_z must be non-negative")

    def impurity_for(self, d: Dataset) -> ImpurityKind:
        if self.kind is not None:
            return self.kind
        return ImpurityKind.GINI if d.is_classification else ImpurityKind.SQUARED_ERROR

    def loo_config(self, kind: ImpurityKind) -> LooConfig:
        return LooConfig(kind=kind, min_leaf=self.min_leaf, folds=self.loo_folds, seed=self.seed,
                         stop_margin=self.stop_margin, stop_z=self.stop_z, lookahead_z=self.lookahead_z,
                         n_jobs=self.n_jobs)

    def to_dict(self) -> Dict[str, Any]:
        doc = asdict(self)
        doc['selector'] = self.selector.value
        doc['kind'] = self.kind.value if self.kind is not None else None
        doc.pop('n_jobs')
        return doc

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> 'GrowConfig':
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise GrowConfigError(f"Unknown grow settings: {', '.join(sorted(unknown))}")
        return cls(**doc)

class TreeBuilder:
    """Grows one tree from a dataset under a GrowConfig"""

    def __init__(self, cfg: GrowConfig):
        self.cfg = cfg

    def grow(self, d: Dataset) -> TreeModel:
        if d.n == 0:
            raise TreeError("Cannot grow a tree on an empty dataset")
        cfg = self.cfg
        self._d = d
        self._y = d.y
        self._kind = cfg.impurity_for(d)
        self._loo = cfg.loo_config(self._kind) if cfg.selector == Selector.ALOOF else None
        self._rng = np.random.default_rng(cfg.seed)
        self._eligible = [j for j in range(d.p)
                          if cfg.max_categories is None or not d.column(j).is_categorical
                          or d.column(j).n_categories <= cfg.max_categories]
        excluded = d.p - len(self._eligible)
        if excluded:
            logger.debug(f"limited-K filter excluded {excluded} features above {cfg.max_categories} categories")

        rows = np.arange(d.n)
        root = self._node(rows, 0)
        if cfg.max_leaves is not None:
            self._grow_best_first(root, rows)
        else:
            self._grow_depth_first(root, rows)

        model = TreeModel(root=root, task=d.task, impurity=self._kind, schema_fingerprint=d.schema.fingerprint,
                          feature_names=tuple(d.feature_names), dictionaries=tuple(d.dictionaries),
                          config=cfg.to_dict())
        logger.debug(f"Grew {cfg.selector.value} tree: n={d.n}, leaves={model.n_leaves}, depth={model.depth}")
        return model

    def _node(self, rows: np.ndarray, depth: int) -> TreeNode:
        y = self._y[rows]
        return TreeNode(value=float(y.mean()), n=int(rows.size), impurity=node_impurity(y, self._kind), depth=depth)

    def _candidates(self) -> List[int]:
        m = self.cfg.max_features
        if m is None or m >= len(self._eligible):
            return self._eligible
        return sorted(int(j) for j in self._rng.choice(self._eligible, size=m, replace=False))

    def _find_split(self, node: TreeNode, rows: np.ndarray) -> Optional[SplitSearchResult]:
        cfg = self.cfg
        if cfg.max_depth is not None and node.depth >= cfg.max_depth:
            return None
        if rows.size < cfg.min_node or np.ptp(self._y[rows]) == 0:
            return None
        features = self._candidates()
        if not features:
            return None
        view = self._d.subset(rows)
        if self._loo is not None:
            lookahead = cfg.max_depth is None or node.depth + 1 < cfg.max_depth
            return select_variable(view, self._loo, features, cfg.use_stopping_rule, lookahead).split
        return self._cart_split(view, features, node.impurity)

    def _cart_split(self, view: Dataset, features: List[int], impurity: float) -> Optional[SplitSearchResult]:
        """Best split over the features: global argmin of ℒ, ties to the lowest feature index"""
        results = []
        for j in features:
            col = view.column(j)
            results.append(best_split(view.feature(j), view.y, self._kind, col.is_categorical,
                                      self.cfg.min_leaf, j, col.n_categories or None))
        values = np.array([r.impurity if r.found else np.inf for r in results])
        i = pick_first_min(values, self._kind, impurity)
        if i < 0:
            return None
        best = results[i]
        if not best.impurity < impurity - tie_tolerance(self._kind, best.impurity, impurity):
            return None
        return best

    def _split(self, node: TreeNode, rows: np.ndarray, split: SplitSearchResult) -> Tuple[np.ndarray, np.ndarray]:
        rule = split.rule
        values = self._d.feature(rule.feature)[rows]
        mask = rule.goes_left(values)
        left_rows, right_rows = rows[mask], rows[~mask]
        node.rule = rule
        node.larger_left = left_rows.size >= right_rows.size
        if rule.is_categorical:
            node.seen_categories = frozenset(int(c) for c in np.unique(values))
        node.left = self._node(left_rows, node.depth + 1)
        node.right = self._node(right_rows, node.depth + 1)
        return left_rows, right_rows

    def _grow_depth_first(self, root: TreeNode, rows: np.ndarray):
        stack = [(root, rows)]
        while stack:
            node, rows = stack.pop()
            split = self._find_split(node, rows)
            if split is None:
                continue
            left_rows, right_rows = self._split(node, rows, split)
            stack.append((node.right, right_rows))
            stack.append((node.left, left_rows))

    def _grow_best_first(self, root: TreeNode, rows: np.ndarray):
        """Expand the leaf with the largest impurity decrease until max_leaves is reached"""
        heap = []
        counter = 0

        def push(node: TreeNode, node_rows: np.ndarray):
            nonlocal counter
            split = self._find_split(node, node_rows)
            if split is not None:
                heapq.heappush(heap, (-(node.impurity - split.impurity), counter, node, node_rows, split))
                counter += 1

        push(root, rows)
        leaves = 1
        while heap and leaves < self.cfg.max_leaves:
            _, _, node, node_rows, split = heapq.heappop(heap)
            left_rows, right_rows = self._split(node, node_rows, split)
            leaves += 1
            push(node.left, left_rows)
            push(node.right, right_rows)

def grow_tree(d: Dataset, cfg: GrowConfig) -> TreeModel:
    return TreeBuilder(cfg).grow(d)

def grow_cart(d: Dataset, cfg: GrowConfig = None) -> TreeModel:
    """Grow a tree choosing each split by the impurity argmin over all eligible features"""
    cfg = cfg or GrowConfig()
    if cfg.selector != Selector.CART:
        cfg = replace(cfg, selector=Selector.CART)
    return TreeBuilder(cfg).grow(d)

def grow_aloof(d: Dataset, cfg: GrowConfig = None) -> TreeModel:
    """Grow a tree choosing each splitting variable by LOO loss, stopping when no variable beats the baseline"""
    cfg = cfg or GrowConfig(selector=Selector.ALOOF)
    if cfg.selector != Selector.ALOOF:
        cfg = replace(cfg, selector=Selector.ALOOF)
    return TreeBuilder(cfg).grow(d)
