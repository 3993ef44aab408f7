"""
Aggregated experiment series and their CSV files
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Dict, Tuple

import numpy as np
import pandas as pd

from modules.config.utils import ensure_parent_dir
from .exceptions import SimulationError

logger = logging.getLogger(__name__)

SERIES_COLUMNS = ["sweep", "learner", "mean", "stderr", "reps"]

@dataclass(frozen=True)
class SeriesRow:
    sweep: float
    learner: str
    mean: float
    stderr: float
    reps: int

@dataclass(eq=False)
class ExperimentSeries:
    """Mean and standard error of a replicate loss per (sweep value, learner)"""
    name: str
    rows: List[SeriesRow]
    losses: Dict[Tuple[float, str], np.ndarray] = field(default_factory=dict, repr=False)

    @classmethod
    def aggregate(cls, name: str, losses: Dict[Tuple[float, str], np.ndarray]) -> 'ExperimentSeries':
        rows = []
        for (sweep, learner), values in losses.items():
            values = np.asarray(values, dtype=np.float64)
            if values.size == 0:
                raise SimulationError(f"No replicates for {learner} at {sweep}")
            stderr = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
            rows.append(SeriesRow(float(sweep), learner, float(values.mean()), stderr, int(values.size)))
        return cls(name, rows, dict(losses))

    def learners(self) -> List[str]:
        return list(dict.fromkeys(row.learner for row in self.rows))

    def means(self, learner: str) -> Dict[float, float]:
        return {row.sweep: row.mean for row in self.rows if row.learner == learner}

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.__dict__ for row in self.rows], columns=SERIES_COLUMNS)

    def replicate_frame(self) -> pd.DataFrame:
        rows = [{"sweep": sweep, "learner": learner, "replicate": r, "loss": float(v)}
                for (sweep, learner), values in self.losses.items() for r, v in enumerate(values)]
        return pd.DataFrame(rows, columns=["sweep", "learner", "replicate", "loss"])

    def write_csv(self, path: str, replicates_path: str = None):
        ensure_parent_dir(path)
        self.frame().to_csv(path, index=False, float_format="%.10g")
        if replicates_path:
            ensure_parent_dir(replicates_path)
            self.replicate_frame().to_csv(replicates_path, index=False, float_format="%.10g")
        logger.info(f"Wrote {self.name} series ({len(self.rows)} rows) to {path}")

def read_series(path: str, name: str = "series") -> ExperimentSeries:
    frame = pd.read_csv(path)
    if list(frame.columns) != SERIES_COLUMNS:
        raise SimulationError(f"{path}: expected header {','.join(SERIES_COLUMNS)}")
    rows = [SeriesRow(float(r.sweep), str(r.learner), float(r.mean), float(r.stderr), int(r.reps))
            for r in frame.itertuples(index=False)]
    return ExperimentSeries(name, rows)
