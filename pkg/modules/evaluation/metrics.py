"""
Prediction metrics: squared error, misclassification and AUC
"""
from enum import Enum

import numpy as np
from scipy.stats import rankdata

from .exceptions import MetricError

class MetricKind(str, Enum):
    MSE = "mse"
    MISCLASSIFICATION = "misclassification"
    AUC = "auc"

def _arrays(predictions, truths):
    predictions = np.asarray(predictions, dtype=np.float64)
    truths = np.asarray(truths, dtype=np.float64)
    if predictions.shape != truths.shape:
        raise MetricError(f"{predictions.size} predictions for {truths.size} truths")
    if predictions.size == 0:
        raise MetricError("Metrics need at least one prediction")
    return predictions, truths

def _check_binary(truths: np.ndarray, kind: MetricKind):
    if not np.all((truths == 0.0) | (truths == 1.0)):
        raise MetricError(f"{kind.value} needs truths coded 0/1")

def observation_losses(kind: MetricKind, predictions, truths) -> np.ndarray:
    """Per-row loss: squared error, or 0/1 disagreement after thresholding at 0.5"""
    kind = MetricKind(kind)
    predictions, truths = _arrays(predictions, truths)
    if kind == MetricKind.MSE:
        return (predictions - truths) ** 2
    if kind == MetricKind.MISCLASSIFICATION:
        _check_binary(truths, kind)
        return ((predictions > 0.5) != (truths == 1.0)).astype(np.float64)
    raise MetricError("AUC has no per-row loss")

def auc(scores, truths) -> float:
    """Probability that a positive outranks a negative, ties counted half"""
    scores, truths = _arrays(scores, truths)
    _check_binary(truths, MetricKind.AUC)
    positives = truths == 1.0
    n1 = int(positives.sum())
    n0 = truths.size - n1
    if n1 == 0 or n0 == 0:
        raise MetricError("AUC needs both classes present")
    ranks = rankdata(scores)
    return float((ranks[positives].sum() - n1 * (n1 + 1) / 2.0) / (n1 * n0))

def metric(kind: MetricKind, predictions, truths) -> float:
    kind = MetricKind(kind)
    if kind == MetricKind.AUC:
        return auc(predictions, truths)
    return float(np.mean(observation_losses(kind, predictions, truths)))
