"""
Configuration settings for the ALOOF tree learning toolkit
"""
import os
from dotenv import load_dotenv

from .exceptions import ConfigError

# Load environment variables
load_dotenv()

class Settings:
    """Application settings"""

    # Application
    APP_NAME = "aloof-trees"
    VERSION = "1.0.0"

    # Logging (never affects computed results)
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

    # Directory used by the optional dataset fetch script
    DATA_DIR = os.getenv('DATA_DIR', os.path.abspath("data"))

    # Ingestion
    MISSING_TOKENS = ("", "NA")

    # Split search
    LIMITED_K = 32
    MAX_EXHAUSTIVE_CATEGORIES = 20
    SPLIT_TIE_RTOL = 1e-12
    DEFAULT_MIN_LEAF = 1

    # LOO stopping: one-sided z of the per-row improvement over the no-split
    # baseline; a would-be leaf still splits when a child clears LOO_LOOKAHEAD_Z
    LOO_STOP_Z = 2.0
    LOO_LOOKAHEAD_Z = 4.0

    # Gradient boosting
    GB_TREES = 50
    GB_LEARNING_RATE = 0.1
    GB_MIN_NODE_FRACTION = 0.05

    # Random forest
    RF_TREES = 500

    # Evaluation
    CV_FOLDS = 10
    PRUNE_FOLDS = 10
    MIN_DF_REPLICATES = 10
    HOLDOUT_TEST_FRACTION = 0.1

    # Simulation defaults (desk scale)
    SERIES_REPLICATES = 50
    ALPHA_GRID = (0.0, 1.0, 2.0, 5.0, 10.0, 15.0)
    K_GRID = (10, 25, 50, 100, 200)
    DF_K_GRID = (25, 50, 100)
    DF_LEAF_GRID = tuple(range(1, 21))
    SIM_TEST_ROWS = 1000

    # Benchmarks
    BENCH_REPEATS = 5

    # Model files
    MODEL_FORMAT_VERSION = 1

    @classmethod
    def validate(cls):
        """Validate internal consistency of the defaults"""
        if not 0 < cls.GB_LEARNING_RATE <= 1:
            raise ConfigError("GB_LEARNING_RATE must lie in (0, 1]")
        if not 0 < cls.GB_MIN_NODE_FRACTION <= 0.5:
            raise ConfigError("GB_MIN_NODE_FRACTION must lie in (0, 0.5]")
        for name in ('GB_TREES', 'RF_TREES', 'CV_FOLDS', 'PRUNE_FOLDS', 'SERIES_REPLICATES',
                     'BENCH_REPEATS', 'LIMITED_K', 'DEFAULT_MIN_LEAF'):
            if getattr(cls, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if cls.MIN_DF_REPLICATES < 2:
            raise ConfigError("MIN_DF_REPLICATES must be at least 2")
        if cls.LOO_STOP_Z < 0 or cls.LOO_LOOKAHEAD_Z < 0:
            raise ConfigError("LOO stopping thresholds must be non-negative")
        if cls.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ConfigError(f"Unknown LOG_LEVEL: {cls.LOG_LEVEL}")

# Global settings instance
settings = Settings()
