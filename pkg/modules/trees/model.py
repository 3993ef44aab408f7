"""
Fitted decision trees
"""
from dataclasses import dataclass, field, replace
from typing import Optional, FrozenSet, Tuple, List, Dict, Any, Iterator, Callable

import numpy as np

from modules.dataio.dataset import Dataset, Task
from modules.splits.impurity import ImpurityKind
from modules.splits.rules import SplitRule
from .exceptions import SchemaMismatchError, TreeError

def check_features(d: Dataset, fingerprint: str, feature_names: Tuple[str, ...]):
    if d.schema.fingerprint != fingerprint or tuple(d.feature_names) != tuple(feature_names):
        raise SchemaMismatchError(
            f"Dataset features {d.feature_names} do not match the model's {list(feature_names)}")

def prepare_features(d: Dataset, fingerprint: str, feature_names: Tuple[str, ...],
                     dictionaries: Tuple[Optional[Tuple[str, ...]], ...]) -> List[np.ndarray]:
    """Feature columns of d re-expressed in a fitted model's category dictionaries"""
    check_features(d, fingerprint, feature_names)
    if list(d.dictionaries) != list(dictionaries):
        d = d.recode(dictionaries)
    return d.feature_matrix()

@dataclass(eq=False)
class TreeNode:
    """
    A leaf, or an internal node with a rule and two children

    `value` is the mean response of the node's training rows (the class-1
    proportion for classification) and is the prediction when the node is a
    leaf. For categorical rules `seen_categories` holds the codes present at
    the node in training; other codes follow `larger_left`.
    """
    value: float
    n: int
    impurity: float
    depth: int = 0
    rule: Optional[SplitRule] = None
    left: Optional['TreeNode'] = None
    right: Optional['TreeNode'] = None
    larger_left: bool = True
    seen_categories: Optional[FrozenSet[int]] = None

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    def goes_left(self, values: np.ndarray) -> np.ndarray:
        mask = self.rule.goes_left(values)
        if self.rule.is_categorical and self.seen_categories is not None:
            unseen = ~np.isin(values, np.fromiter(self.seen_categories, dtype=np.int64))
            mask = np.where(unseen, self.larger_left, mask)
        return mask

    def as_leaf(self) -> 'TreeNode':
        return TreeNode(value=self.value, n=self.n, impurity=self.impurity, depth=self.depth)

    def walk(self) -> Iterator['TreeNode']:
        """Nodes of the subtree in preorder (node, left subtree, right subtree)"""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.right)
                stack.append(node.left)

    def leaves(self) -> List['TreeNode']:
        return [node for node in self.walk() if node.is_leaf]

@dataclass(frozen=True, eq=False)
class TreeModel:
    """A grown tree with what is needed to apply it to new data"""
    root: TreeNode
    task: Task
    impurity: ImpurityKind
    schema_fingerprint: str
    feature_names: Tuple[str, ...]
    dictionaries: Tuple[Optional[Tuple[str, ...]], ...]
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_leaves(self) -> int:
        return len(self.root.leaves())

    @property
    def depth(self) -> int:
        return max(node.depth for node in self.root.walk()) - self.root.depth

    def nodes(self) -> List[TreeNode]:
        return list(self.root.walk())

    def used_features(self) -> FrozenSet[int]:
        return frozenset(node.rule.feature for node in self.root.walk() if not node.is_leaf)

    def with_root(self, root: TreeNode) -> 'TreeModel':
        return replace(self, root=root)

    def check_compatible(self, d: Dataset):
        check_features(d, self.schema_fingerprint, self.feature_names)

    def prepare(self, d: Dataset) -> List[np.ndarray]:
        """Feature columns of d expressed in the model's category dictionaries"""
        return prepare_features(d, self.schema_fingerprint, self.feature_names, self.dictionaries)

    def route(self, features: List[np.ndarray], n: int) -> List[TreeNode]:
        """Leaf reached by each of n rows given prepared feature columns"""
        out: List[Optional[TreeNode]] = [None] * n
        stack = [(self.root, np.arange(n))]
        while stack:
            node, rows = stack.pop()
            if node.is_leaf:
                for r in rows.tolist():
                    out[r] = node
                continue
            left = node.goes_left(features[node.rule.feature][rows])
            stack.append((node.right, rows[~left]))
            stack.append((node.left, rows[left]))
        return out

    def predict_features(self, features: List[np.ndarray], n: int) -> np.ndarray:
        return np.array([leaf.value for leaf in self.route(features, n)], dtype=np.float64)

    def apply(self, d: Dataset) -> List[TreeNode]:
        """Leaf reached by every row of d"""
        return self.route(self.prepare(d), d.n)

    def predict(self, d: Dataset, features: List[np.ndarray] = None) -> np.ndarray:
        """Leaf value per row: a mean, or a class-1 proportion for classification"""
        features = self.prepare(d) if features is None else features
        return self.predict_features(features, d.n)

    def predict_class(self, d: Dataset) -> np.ndarray:
        return (self.predict(d) > 0.5).astype(np.int64)

def map_leaves(node: TreeNode, fn: Callable[[TreeNode], TreeNode]) -> TreeNode:
    """Copy of a subtree with every leaf replaced by fn(leaf)"""
    if node.is_leaf:
        return fn(node)
    return replace(node, left=map_leaves(node.left, fn), right=map_leaves(node.right, fn))

def replace_leaf_values(t: TreeModel, values: Dict[int, float]) -> TreeModel:
    """
    Copy of a tree with new leaf predictions

    Args:
        values: new value per leaf, keyed by the leaf's position in preorder
            among the leaves
    """
    leaves = t.root.leaves()
    if set(values) - set(range(len(leaves))):
        raise TreeError(f"Leaf positions outside [0, {len(leaves)})")
    position = {id(leaf): i for i, leaf in enumerate(leaves)}

    def swap(leaf: TreeNode) -> TreeNode:
        i = position[id(leaf)]
        return replace(leaf, value=float(values[i])) if i in values else replace(leaf)

    return t.with_root(map_leaves(t.root, swap))

def render_tree(t: TreeModel, max_depth: Optional[int] = None) -> str:
    """Indented text rendering of the top levels of a tree"""
    lines = []

    def label(node: TreeNode) -> str:
        return f"value={node.value:.4g} n={node.n}"

    def visit(node: TreeNode, indent: str, level: int):
        if node.is_leaf:
            lines.append(f"{indent}leaf {label(node)}")
            return
        if max_depth is not None and level >= max_depth:
            lines.append(f"{indent}... {label(node)}")
            return
        j = node.rule.feature
        text = node.rule.describe(t.feature_names[j], t.dictionaries[j])
        lines.append(f"{indent}if {text}  [{label(node)}]")
        visit(node.left, indent + "  ", level + 1)
        lines.append(f"{indent}else")
        visit(node.right, indent + "  ", level + 1)

    visit(t.root, "", 0)
    return "\n".join(lines)
