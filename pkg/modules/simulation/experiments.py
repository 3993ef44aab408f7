"""
Synthetic experiment drivers

Every replicate derives its own seeds from the master seed, the sweep
position and the replicate number, so a series is reproducible and can be
run in parallel.
"""
import logging
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple, Dict, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from modules.config.settings import settings
from modules.config.utils import derive_seed, ensure_parent_dir
from modules.dataio.dataset import Dataset
from modules.evaluation.dof import estimate_df
from modules.evaluation.learners import LearnerSpec
from .generators import InteractionModelParams, FixedDesign, gen_interaction_model, gen_uninformative
from .series import ExperimentSeries
from .exceptions import SimulationError

logger = logging.getLogger(__name__)

TRAIN_FRACTION = 0.9

def default_learners() -> List[LearnerSpec]:
    """Limited-K CART, unlimited-K CART (both pruned) and the LOO selector"""
    return [LearnerSpec.limited_k(), LearnerSpec.cart(label="cart-unlimited-k"), LearnerSpec.aloof(label="aloof")]

def oracle_learner() -> LearnerSpec:
    """Pruned CART that never sees the categorical feature"""
    return replace(LearnerSpec.cart(label="cart-oracle"), drop_features=("x2",))

def holdout_split(d: Dataset, train_fraction: float = TRAIN_FRACTION) -> Tuple[Dataset, Dataset]:
    """First rows for training, the rest for testing (rows are i.i.d.)"""
    cut = int(round(d.n * train_fraction))
    if not 0 < cut < d.n:
        raise SimulationError(f"Cannot split {d.n} rows with train fraction {train_fraction}")
    return d.subset(np.arange(cut)), d.subset(np.arange(cut, d.n))

def _test_losses(train: Dataset, test: Dataset, learners: Sequence[LearnerSpec], seed: int) -> List[float]:
    losses = []
    for i, learner in enumerate(learners):
        prediction = learner.fit(train, derive_seed(seed, i)).predict(test)
        losses.append(float(np.mean((test.y - prediction) ** 2)))
    return losses

def _run(tasks, n_jobs: int):
    if n_jobs == 1:
        return [fn(*args) for fn, args in tasks]
    return Parallel(n_jobs=n_jobs)(delayed(fn)(*args) for fn, args in tasks)

def _collect(name: str, sweep: Sequence[float], learners: Sequence[LearnerSpec], reps: int,
             outcomes: List[List[float]]) -> ExperimentSeries:
    losses: Dict[Tuple[float, str], np.ndarray] = {}
    for a, value in enumerate(sweep):
        block = np.array(outcomes[a * reps:(a + 1) * reps])
        for i, learner in enumerate(learners):
            losses[(float(value), learner.name)] = block[:, i]
    series = ExperimentSeries.aggregate(name, losses)
    for row in series.rows:
        logger.debug(f"{name} {row.learner} @ {row.sweep:g}: {row.mean:.4f} ± {row.stderr:.4f}")
    return series

def _alpha_replicate(n: int, k: int, alpha: float, n_test: int, learners, seed: int) -> List[float]:
    train = gen_interaction_model(InteractionModelParams(n, k, alpha, derive_seed(seed, 0)))
    test = gen_interaction_model(InteractionModelParams(n_test, k, alpha, derive_seed(seed, 1)))
    return _test_losses(train, test, learners, derive_seed(seed, 2))

def run_alpha_sweep(alphas: Sequence[float] = settings.ALPHA_GRID, n: int = 300, k: int = 50,
                    reps: int = settings.SERIES_REPLICATES, learners: Optional[Sequence[LearnerSpec]] = None,
                    seed: int = 0, n_test: int = settings.SIM_TEST_ROWS, n_jobs: int = 1) -> ExperimentSeries:
    """
    Test MSE against the interaction strength alpha

    Each replicate draws a training set of n rows and an independent test set
    of n_test rows from the interaction model with K categories.
    """
    learners = list(learners or default_learners())
    if reps < 1:
        raise SimulationError("reps must be at least 1")
    logger.info(f"alpha sweep: {len(alphas)} values x {reps} replicates, n={n}, K={k}")
    tasks = [(_alpha_replicate, (n, k, float(alpha), n_test, learners, derive_seed(seed, a, r)))
             for a, alpha in enumerate(alphas) for r in range(reps)]
    return _collect("alpha-sweep", alphas, learners, reps, _run(tasks, n_jobs))

def _k_replicate(n: int, k: int, informative: bool, alpha: float, learners, seed: int) -> List[float]:
    if informative:
        d = gen_interaction_model(InteractionModelParams(n, k, alpha, seed))
    else:
        d = gen_uninformative(n, k, seed)
    train, test = holdout_split(d)
    return _test_losses(train, test, learners, derive_seed(seed, 1))

def run_k_sweep(ks: Sequence[int] = settings.K_GRID, n: int = 1000, informative: bool = False,
                alpha: float = 15.0, reps: int = settings.SERIES_REPLICATES,
                learners: Optional[Sequence[LearnerSpec]] = None, seed: int = 0,
                n_jobs: int = 1) -> ExperimentSeries:
    """
    Test MSE against the number of categories K

    Each replicate draws n rows and holds out the last tenth. In the
    uninformative setting an oracle CART without the categorical feature is
    added to the learners.
    """
    learners = list(learners or default_learners())
    if not informative and all(learner.name != "cart-oracle" for learner in learners):
        learners.append(oracle_learner())
    if informative and any(k % 2 for k in ks):
        raise SimulationError("The interaction model needs an even K")
    name = "k-sweep-informative" if informative else "k-sweep-uninformative"
    logger.info(f"{name}: {len(ks)} values x {reps} replicates, n={n}")
    tasks = [(_k_replicate, (n, int(k), informative, alpha, learners, derive_seed(seed, a, r)))
             for a, k in enumerate(ks) for r in range(reps)]
    return _collect(name, ks, learners, reps, _run(tasks, n_jobs))

DF_COLUMNS = ["k", "learner", "leaves", "df", "df_stderr", "mse", "mse_stderr", "reps"]

@dataclass(frozen=True)
class DfPoint:
    """Estimated df and test MSE of one learner at one K"""
    k: int
    learner: str
    leaves: Optional[int]
    df: float
    df_stderr: float
    mse: float
    mse_stderr: float
    reps: int

@dataclass(eq=False)
class DfCurves:
    points: List[DfPoint]

    def for_k(self, k: int, learner: str = None) -> List[DfPoint]:
        return [p for p in self.points if p.k == k and (learner is None or p.learner == learner)]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([p.__dict__ for p in self.points], columns=DF_COLUMNS)

    def write_csv(self, path: str):
        ensure_parent_dir(path)
        self.frame().to_csv(path, index=False, float_format="%.10g")
        logger.info(f"Wrote {len(self.points)} df points to {path}")

def run_df_experiment(ks: Sequence[int] = settings.DF_K_GRID, n: int = 200,
                      reps: int = settings.SERIES_REPLICATES, leaf_grid: Sequence[int] = settings.DF_LEAF_GRID,
                      seed: int = 0, n_test: int = settings.SIM_TEST_ROWS, n_jobs: int = 1) -> DfCurves:
    """
    df and test MSE of size-limited CART trees and of the LOO-grown tree

    The design is the uninformative model with x held fixed and y = x1 + N(0, 1)
    redrawn per replicate. CART trees are grown unpruned to each leaf count in
    leaf_grid; the LOO tree is grown with its stopping rule.
    """
    points = []
    for a, k in enumerate(ks):
        design = FixedDesign.uninformative(n, int(k), derive_seed(seed, a, 0))
        test = gen_uninformative(n_test, int(k), derive_seed(seed, a, 1))
        learners = [(leaves, LearnerSpec.cart(pruned=False, label="cart", max_leaves=leaves))
                    for leaves in leaf_grid]
        learners.append((None, LearnerSpec.aloof(label="aloof")))
        for leaves, learner in learners:
            estimate = estimate_df(design, learner, reps, derive_seed(seed, a, 2), n_jobs=n_jobs, test=test)
            points.append(DfPoint(int(k), learner.name, leaves, estimate.df, estimate.stderr,
                                  estimate.test_mse, estimate.test_stderr, reps))
        logger.info(f"df experiment: finished K={k}")
    return DfCurves(points)
