"""
JSON model documents for single trees

Nodes are stored as a flat preorder array with child indices. Real numbers
are written as repr strings so a load/save cycle reproduces the document
byte for byte.
"""
import logging
from typing import Dict, Any, List, Optional

from modules.config.settings import settings
from modules.config.utils import dump_json_document, load_json_document, save_json_document
from modules.dataio.dataset import Task
from modules.splits.impurity import ImpurityKind
from modules.splits.rules import SplitRule
from .model import TreeNode, TreeModel
from .exceptions import ModelFormatError

logger = logging.getLogger(__name__)

def _number(value: float) -> str:
    return repr(float(value))

def _node_document(node: TreeNode, index: Dict[int, int]) -> Dict[str, Any]:
    doc = {"value": _number(node.value), "n": node.n, "impurity": _number(node.impurity), "depth": node.depth}
    if node.is_leaf:
        doc["kind"] = "leaf"
        return doc
    doc.update(kind="split", feature=node.rule.feature, left=index[id(node.left)], right=index[id(node.right)],
               larger="left" if node.larger_left else "right")
    if node.rule.is_categorical:
        doc["left_categories"] = sorted(node.rule.left_categories)
        doc["seen_categories"] = sorted(node.seen_categories or ())
    else:
        doc["threshold"] = _number(node.rule.threshold)
    return doc

def tree_to_document(t: TreeModel) -> Dict[str, Any]:
    nodes = t.nodes()
    index = {id(node): i for i, node in enumerate(nodes)}
    return {
        "format_version": settings.MODEL_FORMAT_VERSION,
        "model": "tree",
        "task": t.task.value,
        "impurity": t.impurity.value,
        "schema_fingerprint": t.schema_fingerprint,
        "feature_names": list(t.feature_names),
        "dictionaries": [list(d) if d is not None else None for d in t.dictionaries],
        "config": t.config,
        "nodes": [_node_document(node, index) for node in nodes],
    }

def require_field(doc: Dict[str, Any], key: str, location: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ModelFormatError(f"missing field '{key}'", location)
    return doc[key]

def parse_number(text, location: str) -> float:
    if not isinstance(text, str):
        raise ModelFormatError(f"expected a number string, got {type(text).__name__}", location)
    try:
        return float(text)
    except ValueError:
        raise ModelFormatError(f"cannot parse '{text}' as a number", location)

def check_version(doc: Dict[str, Any], kind: str):
    version = require_field(doc, "format_version", "$")
    if version != settings.MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"unsupported format_version {version} (expected {settings.MODEL_FORMAT_VERSION})",
                               "$.format_version")
    if doc.get("model") != kind:
        raise ModelFormatError(f"expected a {kind} document, got {doc.get('model')!r}", "$.model")

def _build_node(docs: List[Dict[str, Any]], i: int, n_features: int, visiting: set) -> TreeNode:
    location = f"$.nodes[{i}]"
    if not 0 <= i < len(docs):
        raise ModelFormatError(f"child index {i} out of range", location)
    if i in visiting:
        raise ModelFormatError("node referenced twice", location)
    visiting.add(i)
    doc = docs[i]
    node = TreeNode(value=parse_number(require_field(doc, "value", location), f"{location}.value"),
                    n=int(require_field(doc, "n", location)),
                    impurity=parse_number(require_field(doc, "impurity", location), f"{location}.impurity"),
                    depth=int(require_field(doc, "depth", location)))
    kind = require_field(doc, "kind", location)
    if kind == "leaf":
        return node
    if kind != "split":
        raise ModelFormatError(f"unknown node kind '{kind}'", f"{location}.kind")
    feature = require_field(doc, "feature", location)
    if not isinstance(feature, int) or not 0 <= feature < n_features:
        raise ModelFormatError(f"feature index {feature} out of range", f"{location}.feature")
    if "threshold" in doc:
        node.rule = SplitRule(feature, threshold=parse_number(doc["threshold"], f"{location}.threshold"))
    else:
        node.rule = SplitRule(feature, left_categories=require_field(doc, "left_categories", location))
        node.seen_categories = frozenset(int(c) for c in require_field(doc, "seen_categories", location))
    larger = require_field(doc, "larger", location)
    if larger not in ("left", "right"):
        raise ModelFormatError(f"larger must be 'left' or 'right', got {larger!r}", f"{location}.larger")
    node.larger_left = larger == "left"
    node.left = _build_node(docs, require_field(doc, "left", location), n_features, visiting)
    node.right = _build_node(docs, require_field(doc, "right", location), n_features, visiting)
    return node

def tree_from_document(doc: Dict[str, Any]) -> TreeModel:
    check_version(doc, "tree")
    try:
        task = Task(require_field(doc, "task", "$"))
        impurity = ImpurityKind(require_field(doc, "impurity", "$"))
    except ValueError as e:
        raise ModelFormatError(str(e), "$")
    names = tuple(require_field(doc, "feature_names", "$"))
    dictionaries = tuple(tuple(d) if d is not None else None for d in require_field(doc, "dictionaries", "$"))
    if len(dictionaries) != len(names):
        raise ModelFormatError("dictionaries and feature_names differ in length", "$.dictionaries")
    nodes = require_field(doc, "nodes", "$")
    if not isinstance(nodes, list) or not nodes:
        raise ModelFormatError("nodes must be a non-empty array", "$.nodes")
    visiting = set()
    root = _build_node(nodes, 0, len(names), visiting)
    if len(visiting) != len(nodes):
        raise ModelFormatError(f"{len(nodes) - len(visiting)} nodes are unreachable from the root", "$.nodes")
    return TreeModel(root=root, task=task, impurity=impurity, schema_fingerprint=str(require_field(doc, "schema_fingerprint", "$")),
                     feature_names=names, dictionaries=dictionaries, config=dict(require_field(doc, "config", "$")))

def dumps_tree(t: TreeModel) -> str:
    return dump_json_document(tree_to_document(t))

def save_tree(t: TreeModel, path: str):
    save_json_document(tree_to_document(t), path)
    logger.info(f"Saved tree with {t.n_leaves} leaves to {path}")

def load_tree(path: str) -> TreeModel:
    return tree_from_document(load_json_document(path))
