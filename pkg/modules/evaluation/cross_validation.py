"""
k-fold cross-validation driver
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from modules.config.settings import settings
from modules.config.utils import derive_seed
from modules.dataio.dataset import Dataset
from modules.dataio.folds import FoldAssignment, kfold_partition
from .learners import LearnerSpec
from .metrics import MetricKind, metric
from .exceptions import EvaluationError, MetricError

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class FoldResult:
    fold: int
    n_train: int
    n_test: int
    value: float
    valid: bool
    reason: str = ""

@dataclass(frozen=True, eq=False)
class MetricReport:
    """
    Per-fold metric values of one learner

    `predictions` holds every row's out-of-fold prediction (NaN for rows of
    invalid folds).
    """
    learner: str
    metric: MetricKind
    seed: int
    k: int
    folds: List[FoldResult]
    predictions: np.ndarray = field(repr=False)

    @property
    def valid_values(self) -> np.ndarray:
        return np.array([f.value for f in self.folds if f.valid])

    @property
    def mean(self) -> float:
        values = self.valid_values
        return float(values.mean()) if values.size else float("nan")

    @property
    def invalid_count(self) -> int:
        return sum(not f.valid for f in self.folds)

    def as_rows(self) -> List[dict]:
        return [{"learner": self.learner, "metric": self.metric.value, "fold": f.fold, "n_train": f.n_train,
                 "n_test": f.n_test, "value": f.value, "valid": f.valid, "reason": f.reason} for f in self.folds]

def default_metric(d: Dataset) -> MetricKind:
    return MetricKind.MISCLASSIFICATION if d.is_classification else MetricKind.MSE

def _run_fold(learner: LearnerSpec, d: Dataset, kind: MetricKind, fold: int, train_rows: np.ndarray,
              test_rows: np.ndarray, seed: int):
    if train_rows.size < learner.min_rows:
        return FoldResult(fold, int(train_rows.size), int(test_rows.size), float("nan"), False,
                          f"training fold has {train_rows.size} rows, learner needs {learner.min_rows}"), None
    model = learner.fit(d.subset(train_rows), derive_seed(seed, fold))
    test = d.subset(test_rows)
    prediction = model.predict(test)
    try:
        value = metric(kind, prediction, test.y)
    except MetricError as e:
        return FoldResult(fold, int(train_rows.size), int(test_rows.size), float("nan"), False, str(e)), prediction
    return FoldResult(fold, int(train_rows.size), int(test_rows.size), value, True), prediction

def cross_validate(learner: LearnerSpec, d: Dataset, k: int = None, seed: int = 0,
                   metric_kind: Optional[MetricKind] = None, n_jobs: int = 1,
                   folds: Optional[FoldAssignment] = None) -> MetricReport:
    """
    Train on k − 1 folds, score the held-out fold, for every fold

    Folds whose training part is too small for the learner, or whose metric
    is undefined (e.g. AUC on a single-class fold), are kept in the report as
    invalid and excluded from the mean.
    """
    kind = MetricKind(metric_kind) if metric_kind is not None else default_metric(d)
    assignment = folds or kfold_partition(d.n, k or settings.CV_FOLDS, seed)
    if assignment.n != d.n:
        raise EvaluationError(f"Fold assignment covers {assignment.n} rows, dataset has {d.n}")
    jobs = [(learner, d, kind, fold, train, test, seed) for fold, train, test in assignment.splits()]
    if n_jobs == 1:
        outcomes = [_run_fold(*job) for job in jobs]
    else:
        outcomes = Parallel(n_jobs=n_jobs)(delayed(_run_fold)(*job) for job in jobs)

    predictions = np.full(d.n, np.nan)
    results = []
    for (_, _, _, fold, _, test, _), (result, prediction) in zip(jobs, outcomes):
        results.append(result)
        if result.valid:
            predictions[test] = prediction
        logger.info(f"{learner.name}: fold {fold + 1}/{assignment.k} {kind.value}="
                    f"{result.value:.6g}{'' if result.valid else ' (invalid)'}")

    report = MetricReport(learner.name, kind, seed, assignment.k, results, predictions)
    if report.invalid_count:
        logger.warning(f"{learner.name}: {report.invalid_count} of {assignment.k} folds invalid and excluded")
    return report
