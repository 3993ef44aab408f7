"""
CSV reports of cross-validation runs
"""
import logging
from typing import List

import pandas as pd

from modules.config.utils import ensure_parent_dir
from .cross_validation import MetricReport

logger = logging.getLogger(__name__)

def fold_frame(reports: List[MetricReport]) -> pd.DataFrame:
    rows = [row for report in reports for row in report.as_rows()]
    return pd.DataFrame(rows, columns=["learner", "metric", "fold", "n_train", "n_test", "value", "valid", "reason"])

def summary_frame(reports: List[MetricReport]) -> pd.DataFrame:
    rows = [{"learner": r.learner, "metric": r.metric.value, "k": r.k, "seed": r.seed, "mean": r.mean,
             "valid_folds": r.k - r.invalid_count} for r in reports]
    return pd.DataFrame(rows, columns=["learner", "metric", "k", "seed", "mean", "valid_folds"])

def write_fold_report(reports: List[MetricReport], path: str):
    ensure_parent_dir(path)
    fold_frame(reports).to_csv(path, index=False, float_format="%.10g")
    logger.info(f"Wrote per-fold report to {path}")

def write_summary(reports: List[MetricReport], path: str):
    ensure_parent_dir(path)
    summary_frame(reports).to_csv(path, index=False, float_format="%.10g")
    logger.info(f"Wrote summary to {path}")
