"""
JSON documents for ensembles, embedding one tree document per member
"""
import logging
from typing import Dict, Any, Union

import numpy as np

from modules.config.settings import settings
from modules.config.utils import dump_json_document, load_json_document, save_json_document
from modules.dataio.dataset import Task
from modules.trees.model import TreeModel
from modules.trees.serialization import tree_to_document, tree_from_document, check_version, require_field, parse_number
from modules.trees.exceptions import ModelFormatError
from .model import EnsembleModel, EnsembleKind, GbLoss

logger = logging.getLogger(__name__)

def ensemble_to_document(m: EnsembleModel) -> Dict[str, Any]:
    return {
        "format_version": settings.MODEL_FORMAT_VERSION,
        "model": "ensemble",
        "kind": m.kind.value,
        "task": m.task.value,
        "loss": m.loss.value if m.loss is not None else None,
        "base": repr(float(m.base)),
        "learning_rate": repr(float(m.learning_rate)),
        "schema_fingerprint": m.schema_fingerprint,
        "feature_names": list(m.feature_names),
        "dictionaries": [list(d) if d is not None else None for d in m.dictionaries],
        "config": m.config,
        "seeds": list(m.seeds),
        "oob_rows": [oob.tolist() for oob in m.oob_rows],
        "members": [tree_to_document(t) for t in m.members],
    }

def ensemble_from_document(doc: Dict[str, Any]) -> EnsembleModel:
    check_version(doc, "ensemble")
    try:
        kind = EnsembleKind(require_field(doc, "kind", "$"))
        task = Task(require_field(doc, "task", "$"))
        loss = GbLoss(doc["loss"]) if doc.get("loss") is not None else None
    except ValueError as e:
        raise ModelFormatError(str(e), "$")
    members = []
    for i, member in enumerate(require_field(doc, "members", "$")):
        try:
            members.append(tree_from_document(member))
        except ModelFormatError as e:
            raise ModelFormatError(str(e), f"$.members[{i}]")
    seeds = tuple(int(s) for s in require_field(doc, "seeds", "$"))
    if len(seeds) != len(members):
        raise ModelFormatError(f"{len(seeds)} seeds for {len(members)} members", "$.seeds")
    oob_rows = tuple(np.asarray(rows, dtype=np.int64) for rows in doc.get("oob_rows", []))
    return EnsembleModel(kind=kind, task=task, members=tuple(members), seeds=seeds,
                         schema_fingerprint=str(require_field(doc, "schema_fingerprint", "$")),
                         feature_names=tuple(require_field(doc, "feature_names", "$")),
                         dictionaries=tuple(tuple(d) if d is not None else None
                                            for d in require_field(doc, "dictionaries", "$")),
                         config=dict(require_field(doc, "config", "$")),
                         base=parse_number(require_field(doc, "base", "$"), "$.base"),
                         learning_rate=parse_number(require_field(doc, "learning_rate", "$"), "$.learning_rate"),
                         loss=loss, oob_rows=oob_rows)

def dumps_ensemble(m: EnsembleModel) -> str:
    return dump_json_document(ensemble_to_document(m))

def save_model(model: Union[TreeModel, EnsembleModel], path: str):
    """Write a tree or ensemble model file"""
    if isinstance(model, EnsembleModel):
        save_json_document(ensemble_to_document(model), path)
        logger.info(f"Saved {model.kind.value} ensemble with {model.n_members} trees to {path}")
    else:
        save_json_document(tree_to_document(model), path)
        logger.info(f"Saved tree with {model.n_leaves} leaves to {path}")

def load_model(path: str) -> Union[TreeModel, EnsembleModel]:
    """Read a tree or ensemble model file"""
    doc = load_json_document(path)
    if not isinstance(doc, dict):
        raise ModelFormatError("document must be a JSON object", "$")
    if doc.get("model") == "ensemble":
        return ensemble_from_document(doc)
    return tree_from_document(doc)
