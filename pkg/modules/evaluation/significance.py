"""
Significance tests for comparing two learners
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom, norm, ttest_rel

from .exceptions import MetricError

@dataclass(frozen=True)
class SignTestResult:
    """
    One-sided p-values for observing at least `wins` of `trials` under p = 1/2

    `p_value` is the continuity-corrected normal approximation, `p_exact`
    the binomial tail; `exact` picks which one is reported.
    """
    wins: int
    trials: int
    p_value: float
    p_exact: float
    exact: bool = False

    @property
    def reported(self) -> float:
        return self.p_exact if self.exact else self.p_value

    @property
    def method(self) -> str:
        return "exact binomial" if self.exact else "normal approximation"

def sign_test(wins: int, trials: int, exact: bool = False) -> SignTestResult:
    """Normal approximation with continuity correction, plus the exact binomial tail"""
    if trials <= 0:
        raise MetricError("The sign test needs at least one trial")
    if not 0 <= wins <= trials:
        raise MetricError(f"wins must lie in [0, {trials}], got {wins}")
    z = (wins - 0.5 - trials / 2.0) / math.sqrt(trials / 4.0)
    return SignTestResult(wins, trials, float(norm.sf(z)), float(binom.sf(wins - 1, trials, 0.5)), exact)

@dataclass(frozen=True)
class PairedTestResult:
    """One-sided test that learner a has the smaller mean loss on a shared test set"""
    p_value: float
    mean_difference: float
    statistic: float
    n: int

def paired_holdout_test(losses_a, losses_b) -> PairedTestResult:
    """
    Paired t-test on per-row loss differences a − b, alternative mean < 0

    A zero difference everywhere gives p = 0.5; a constant nonzero
    difference gives p = 0 or 1 by its sign.
    """
    a = np.asarray(losses_a, dtype=np.float64)
    b = np.asarray(losses_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise MetricError(f"Loss vectors differ in length ({a.size} vs {b.size})")
    if a.size < 2:
        raise MetricError("The paired test needs at least 2 rows")
    diff = a - b
    mean = float(diff.mean())
    if np.all(diff == diff[0]):
        if diff[0] == 0:
            return PairedTestResult(0.5, 0.0, 0.0, a.size)
        return PairedTestResult(0.0 if mean < 0 else 1.0, mean, -math.inf if mean < 0 else math.inf, a.size)
    result = ttest_rel(a, b, alternative="less")
    return PairedTestResult(float(result.pvalue), mean, float(result.statistic), a.size)
