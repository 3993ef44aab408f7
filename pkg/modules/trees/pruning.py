"""
Cost-complexity (weakest-link) pruning with cross-validated alpha
"""
import logging
import math
from dataclasses import replace
from typing import List, Tuple, Dict

import numpy as np

from modules.config.settings import settings
from modules.dataio.dataset import Dataset
from modules.dataio.folds import kfold_partition
from .builder import GrowConfig, TreeBuilder
from .model import TreeNode, TreeModel

logger = logging.getLogger(__name__)

ALPHA_RTOL = 1e-12

def _copy(node: TreeNode) -> TreeNode:
    if node.is_leaf:
        return replace(node)
    return replace(node, left=_copy(node.left), right=_copy(node.right))

def _link_strengths(root: TreeNode) -> Dict[int, Tuple[float, TreeNode]]:
    """g(t) = (R(t) − R(T_t)) / (|leaves(T_t)| − 1) for every internal node, keyed by id"""
    strengths = {}

    def visit(node: TreeNode) -> Tuple[float, int]:
        if node.is_leaf:
            return node.impurity, 1
        r_left, n_left = visit(node.left)
        r_right, n_right = visit(node.right)
        r_sub, leaves = r_left + r_right, n_left + n_right
        strengths[id(node)] = (max(node.impurity - r_sub, 0.0) / (leaves - 1), node)
        return r_sub, leaves

    visit(root)
    return strengths

def _collapse(node: TreeNode):
    node.rule = None
    node.left = None
    node.right = None
    node.seen_categories = None

def cost_complexity_path(t: TreeModel) -> List[Tuple[float, TreeModel]]:
    """
    Nested subtrees of the weakest-link sequence

    Returns (alpha_k, T_k) pairs with increasing alpha, starting at alpha 0
    and ending with the root alone. T_k is optimal for alpha in
    [alpha_k, alpha_{k+1}).
    """
    root = _copy(t.root)
    path = []
    alpha = 0.0
    while True:
        strengths = _link_strengths(root)
        while strengths:
            weakest = min(g for g, _ in strengths.values())
            if weakest > alpha * (1 + ALPHA_RTOL):
                break
            for g, node in strengths.values():
                if g <= weakest * (1 + ALPHA_RTOL):
                    _collapse(node)
            strengths = _link_strengths(root)
        path.append((alpha, t.with_root(_copy(root))))
        if not strengths:
            return path
        alpha = min(g for g, _ in strengths.values())

def _subtree_for(path: List[Tuple[float, TreeModel]], alpha: float) -> TreeModel:
    chosen = path[0][1]
    for a, tree in path:
        if a <= alpha:
            chosen = tree
    return chosen

def prune_at(t: TreeModel, alpha: float) -> TreeModel:
    """Smallest subtree minimizing R(T) + alpha·|leaves(T)|"""
    return _subtree_for(cost_complexity_path(t), alpha)

def prune_cost_complexity(t: TreeModel, d: Dataset, folds: int = None, seed: int = 0) -> TreeModel:
    """
    Prune a grown tree at the cross-validated alpha

    Candidate alphas are geometric means of consecutive alphas of the full
    tree's sequence (plus the last one, the root alone). Each fold regrows a
    tree with the same settings on the other folds and scores every candidate
    by held-out squared error; ties go to the larger alpha.

    Args:
        t: tree grown on d
        d: its training data
        folds: number of CV folds (PRUNE_FOLDS by default, capped at n)
        seed: fold assignment seed
    """
    if t.root.is_leaf or d.n < 2:
        return t
    path = cost_complexity_path(t)
    if len(path) == 1:
        return path[0][1]
    alphas = [a for a, _ in path]
    candidates = [math.sqrt(alphas[k] * alphas[k + 1]) for k in range(len(alphas) - 1)] + [alphas[-1]]

    k = min(folds or settings.PRUNE_FOLDS, d.n)
    assignment = kfold_partition(d.n, k, seed)
    cfg = GrowConfig.from_dict(t.config)
    loss = np.zeros(len(candidates))
    for _, train, test in assignment.splits():
        fold_path = cost_complexity_path(TreeBuilder(cfg).grow(d.subset(train)))
        test_d = d.subset(test)
        features = fold_path[0][1].prepare(test_d)
        for c, beta in enumerate(candidates):
            pred = _subtree_for(fold_path, beta).predict(test_d, features)
            loss[c] += float(np.sum((test_d.y - pred) ** 2))

    best = int(np.flatnonzero(loss <= loss.min() * (1 + ALPHA_RTOL))[-1])
    pruned = _subtree_for(path, candidates[best])
    logger.debug(f"Pruned at alpha={candidates[best]:.6g}: {t.n_leaves} -> {pruned.n_leaves} leaves")
    return pruned
