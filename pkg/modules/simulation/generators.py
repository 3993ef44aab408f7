"""
Seeded synthetic datasets

Both models have a standard normal numeric feature x1, a categorical
feature x2 uniform over K labels c1..cK, and unit-variance Gaussian noise.
In the interaction model the response is alpha·(1[x1 > 0]·1[x2 in the first
half] + 1[x1 ≤ 0]·1[x2 in the second half]) + noise; in the uninformative
model it is x1 + noise and x2 is independent of everything.
"""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from modules.dataio.dataset import Dataset, FeatureColumn, FeatureKind, Task
from modules.dataio.schema import Schema
from .exceptions import SimulationError

SCHEMA = Schema.from_pairs([("x1", "numeric"), ("x2", "categorical"), ("y", "response-numeric")])

@dataclass(frozen=True)
class InteractionModelParams:
    n: int
    k: int
    alpha: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise SimulationError("n must be at least 1")
        if self.k < 2 or self.k % 2:
            raise SimulationError(f"K must be an even number of at least 2, got {self.k}")
        if self.alpha < 0:
            raise SimulationError("alpha must be non-negative")

def category_labels(k: int) -> Tuple[str, ...]:
    return tuple(f"c{i + 1}" for i in range(k))

def _inputs(rng: np.random.Generator, n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    return rng.standard_normal(n), rng.integers(0, k, size=n)

def interaction_signal(x1: np.ndarray, codes: np.ndarray, k: int) -> np.ndarray:
    first_half = codes < k // 2
    return ((x1 > 0) & first_half | (x1 <= 0) & ~first_half).astype(np.float64)

def make_dataset(x1: np.ndarray, codes: np.ndarray, k: int, y: np.ndarray) -> Dataset:
    columns = (FeatureColumn("x1", FeatureKind.NUMERIC, x1),
               FeatureColumn("x2", FeatureKind.CATEGORICAL, codes, category_labels(k)))
    return Dataset(schema=SCHEMA, columns=columns, response=y, task=Task.REGRESSION)

def gen_interaction_model(p: InteractionModelParams) -> Dataset:
    rng = np.random.default_rng(p.seed)
    x1, codes = _inputs(rng, p.n, p.k)
    y = p.alpha * interaction_signal(x1, codes, p.k) + rng.standard_normal(p.n)
    return make_dataset(x1, codes, p.k, y)

def gen_uninformative(n: int, k: int, seed: int = 0) -> Dataset:
    if n < 2 or k < 2:
        raise SimulationError("n and K must both be at least 2")
    rng = np.random.default_rng(seed)
    x1, codes = _inputs(rng, n, k)
    return make_dataset(x1, codes, k, x1 + rng.standard_normal(n))

@dataclass(frozen=True, eq=False)
class FixedDesign:
    """Fixed inputs whose responses are redrawn as mean + N(0, sigma2) noise"""
    template: Dataset
    mean: np.ndarray
    sigma2: float = 1.0

    @property
    def n(self) -> int:
        return self.template.n

    def sample(self, rng: np.random.Generator) -> Dataset:
        y = self.mean + math.sqrt(self.sigma2) * rng.standard_normal(self.n)
        return self.template.with_response(y, Task.REGRESSION)

    @classmethod
    def interaction(cls, p: InteractionModelParams, sigma2: float = 1.0) -> 'FixedDesign':
        x1, codes = _inputs(np.random.default_rng(p.seed), p.n, p.k)
        mean = p.alpha * interaction_signal(x1, codes, p.k)
        return cls(make_dataset(x1, codes, p.k, mean), mean, sigma2)

    @classmethod
    def uninformative(cls, n: int, k: int, seed: int = 0, sigma2: float = 1.0) -> 'FixedDesign':
        x1, codes = _inputs(np.random.default_rng(seed), n, k)
        return cls(make_dataset(x1, codes, k, x1), x1.copy(), sigma2)

    @classmethod
    def linear(cls, n: int, d: int, seed: int = 0, sigma2: float = 1.0) -> 'FixedDesign':
        """d standard normal regressors with unit coefficients and no intercept"""
        x = np.random.default_rng(seed).standard_normal((n, d))
        names = [f"x{j + 1}" for j in range(d)]
        schema = Schema.from_pairs([(name, "numeric") for name in names] + [("y", "response-numeric")])
        mean = x.sum(axis=1)
        columns = tuple(FeatureColumn(name, FeatureKind.NUMERIC, x[:, j]) for j, name in enumerate(names))
        return cls(Dataset(schema=schema, columns=columns, response=mean, task=Task.REGRESSION), mean, sigma2)
