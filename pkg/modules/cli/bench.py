"""
Timing harness for the split search and LOO scorers
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from modules.aloof.config import LooConfig
from modules.aloof.classification import loo_score_categorical_classification, loo_score_numeric_classification
from modules.aloof.regression import loo_score_categorical_regression, loo_score_numeric_regression
from modules.config.settings import settings
from modules.config.utils import derive_rng, ensure_parent_dir
from modules.splits.impurity import ImpurityKind
from modules.splits.search import best_split_numeric

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class BenchCase:
    categorical: bool
    classification: bool
    run: Callable[[np.ndarray, np.ndarray, int], object]

GINI = LooConfig(kind=ImpurityKind.GINI)
SSE = LooConfig(kind=ImpurityKind.SQUARED_ERROR)

BENCH_CASES: Dict[str, BenchCase] = {
    "num-class-loo": BenchCase(False, True, lambda x, y, k: loo_score_numeric_classification(x, y, GINI)),
    "num-reg-loo": BenchCase(False, False, lambda x, y, k: loo_score_numeric_regression(x, y, SSE)),
    "cat-class-loo": BenchCase(True, True, lambda x, y, k: loo_score_categorical_classification(x, y, GINI, k)),
    "cat-reg-loo": BenchCase(True, False, lambda x, y, k: loo_score_categorical_regression(x, y, SSE, k)),
    "cart-split": BenchCase(False, False, lambda x, y, k: best_split_numeric(x, y, ImpurityKind.SQUARED_ERROR)),
}

@dataclass(frozen=True)
class BenchResult:
    case: str
    n: int
    k: int
    median_seconds: float

def bench_inputs(case: BenchCase, n: int, k: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = derive_rng(seed, n, k)
    x = rng.integers(0, k, size=n) if case.categorical else rng.standard_normal(n)
    noise = rng.standard_normal(n)
    if case.classification:
        return x, (noise > 0).astype(np.float64)
    return x, noise

def time_case(name: str, n: int, k: int, seed: int = 0, repeats: int = settings.BENCH_REPEATS) -> BenchResult:
    """Median wall time of `repeats` runs on one seeded input"""
    case = BENCH_CASES[name]
    x, y = bench_inputs(case, n, k, seed)
    seconds = []
    for _ in range(repeats):
        start = time.perf_counter()
        case.run(x, y, k)
        seconds.append(time.perf_counter() - start)
    result = BenchResult(name, n, k if case.categorical else 0, float(np.median(seconds)))
    logger.info(f"{name} n={n} K={result.k}: {result.median_seconds:.4g}s")
    return result

def bench(cases: Sequence[str], n_grid: Sequence[int], k_grid: Sequence[int], seed: int = 0,
          repeats: int = settings.BENCH_REPEATS) -> List[BenchResult]:
    """
    Time every case on the grid

    Numeric cases ignore the K grid and report K = 0.
    """
    results = []
    for name in cases:
        ks = k_grid if BENCH_CASES[name].categorical else [0]
        for n in n_grid:
            for k in ks:
                results.append(time_case(name, n, k, seed, repeats))
    return results

def bench_frame(results: List[BenchResult]) -> pd.DataFrame:
    rows = [{"case": r.case, "n": r.n, "K": r.k, "median_seconds": r.median_seconds} for r in results]
    return pd.DataFrame(rows, columns=["case", "n", "K", "median_seconds"])

def write_bench(results: List[BenchResult], path: str):
    ensure_parent_dir(path)
    bench_frame(results).to_csv(path, index=False, float_format="%.6g")
