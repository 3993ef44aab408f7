"""
Single decision trees: growth, pruning, prediction and model files
"""
from .model import TreeNode, TreeModel, replace_leaf_values, render_tree
from .builder import Selector, GrowConfig, TreeBuilder, grow_tree, grow_cart, grow_aloof
from .pruning import cost_complexity_path, prune_at, prune_cost_complexity
from .serialization import tree_to_document, tree_from_document, dumps_tree, save_tree, load_tree
from .exceptions import TreeError, GrowConfigError, ModelFormatError, SchemaMismatchError

__all__ = ['TreeNode', 'TreeModel', 'replace_leaf_values', 'render_tree', 'Selector', 'GrowConfig',
           'TreeBuilder', 'grow_tree', 'grow_cart', 'grow_aloof', 'cost_complexity_path', 'prune_at',
           'prune_cost_complexity', 'tree_to_document', 'tree_from_document', 'dumps_tree', 'save_tree',
           'load_tree', 'TreeError', 'GrowConfigError', 'ModelFormatError', 'SchemaMismatchError']
