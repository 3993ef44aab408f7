"""
Utility functions shared across the toolkit
"""
import os
import json
from typing import Dict, Any

import numpy as np

def ensure_parent_dir(path: str):
    """Create the parent directory of an output path if needed"""
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)

def load_json_document(path: str) -> Dict[str, Any]:
    """Load a JSON document from disk"""
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)

def dump_json_document(doc: Dict[str, Any]) -> str:
    """Serialize a document deterministically (sorted keys, fixed indent)"""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"

def save_json_document(doc: Dict[str, Any], path: str):
    """Write a JSON document to disk"""
    ensure_parent_dir(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_json_document(doc))

def derive_seed(master_seed: int, *keys: int) -> int:
    """Derive a child seed from a master seed and integer keys.

    The derivation depends only on its arguments, so work items seeded this
    way give identical results under any execution schedule.
    """
    seq = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFF, *[int(k) for k in keys]])
    return int(seq.generate_state(1, dtype=np.uint32)[0])

def derive_rng(master_seed: int, *keys: int) -> np.random.Generator:
    """Random generator for a derived seed"""
    return np.random.default_rng(derive_seed(master_seed, *keys))
