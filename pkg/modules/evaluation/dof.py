"""
Monte Carlo degrees of freedom of a learner

With the inputs held fixed and responses redrawn around a known mean μ with
known noise variance σ², the optimism of the training error is
(2/n)·Σ cov(y_i, ŷ_i), and df = Σ cov(y_i, ŷ_i) / σ². Each replicate
contributes Σ (y_i − μ_i)·ŷ_i / σ², an unbiased estimate of that sum.
"""
import logging
import math
from dataclasses import dataclass
from typing import Protocol, Optional

import numpy as np
from joblib import Parallel, delayed

from modules.config.settings import settings
from modules.config.utils import derive_rng, derive_seed
from modules.dataio.dataset import Dataset
from .learners import LearnerSpec
from .exceptions import InsufficientReplicatesError

logger = logging.getLogger(__name__)

class ResponseSampler(Protocol):
    """Fixed inputs with i.i.d. responses around a known mean vector"""
    mean: np.ndarray
    sigma2: float

    def sample(self, rng: np.random.Generator) -> Dataset: ...

@dataclass(frozen=True)
class DfEstimate:
    df: float
    replicates: int
    sigma2: float
    stderr: float
    training_mse: float
    test_mse: float = math.nan
    test_stderr: float = math.nan

def _replicate(generator: ResponseSampler, learner: LearnerSpec, seed: int, r: int, test: Optional[Dataset]):
    d = generator.sample(derive_rng(seed, r))
    model = learner.fit(d, derive_seed(seed, r, 1))
    fitted = model.predict(d)
    y = d.y
    test_mse = float(np.mean((test.y - model.predict(test)) ** 2)) if test is not None else math.nan
    return (float(np.sum((y - generator.mean) * fitted) / generator.sigma2),
            float(np.mean((y - fitted) ** 2)), test_mse)

def estimate_df(generator: ResponseSampler, learner: LearnerSpec, reps: int, seed: int = 0,
                n_jobs: int = 1, test: Optional[Dataset] = None) -> DfEstimate:
    """
    Estimate df of a learner on a fixed design

    Args:
        generator: response sampler with known mean and σ²
        learner: learner to evaluate
        reps: Monte Carlo replicates (at least MIN_DF_REPLICATES)
        seed: master seed; replicate r draws from derive_rng(seed, r)
        test: optional independent test set; each replicate's fit is also
            scored on it

    Returns:
        DfEstimate with the standard error sd/√reps over replicates;
        a negative Monte Carlo mean is reported as 0
    """
    if reps < settings.MIN_DF_REPLICATES:
        raise InsufficientReplicatesError(f"df estimation needs at least {settings.MIN_DF_REPLICATES} "
                                          f"replicates, got {reps}")
    if n_jobs == 1:
        outcomes = [_replicate(generator, learner, seed, r, test) for r in range(reps)]
    else:
        outcomes = Parallel(n_jobs=n_jobs)(delayed(_replicate)(generator, learner, seed, r, test)
                                           for r in range(reps))
    terms, mse, test_mse = (np.array(column) for column in zip(*outcomes))
    root = math.sqrt(reps)
    estimate = DfEstimate(df=max(float(terms.mean()), 0.0), replicates=reps, sigma2=float(generator.sigma2),
                          stderr=float(terms.std(ddof=1) / root), training_mse=float(mse.mean()),
                          test_mse=float(test_mse.mean()), test_stderr=float(test_mse.std(ddof=1) / root))
    logger.info(f"df of {learner.name}: {estimate.df:.4g} ± {estimate.stderr:.2g} over {reps} replicates")
    return estimate
