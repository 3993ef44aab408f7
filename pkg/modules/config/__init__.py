from .settings import settings, Settings
from .exceptions import TreeLearningError, ConfigError
from .log_setup import configure_logging
from .utils import (ensure_parent_dir, load_json_document, dump_json_document, save_json_document, derive_seed,
                    derive_rng)

__all__ = ["settings", "Settings", "TreeLearningError", "ConfigError", "configure_logging", "ensure_parent_dir",
           "load_json_document", "dump_json_document", "save_json_document", "derive_seed", "derive_rng"]
