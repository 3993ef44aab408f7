"""
Tests for impurity criteria and CART split search
"""
import numpy as np
import pytest

from modules.splits import (ImpurityKind, node_impurity, best_split_numeric, best_split_categorical,
                            best_split_exhaustive_categorical, apply_split, SplitRule, midpoint,
                            SplitInputError, ExhaustiveSearchRefused)
from tests.factories import build_dataset

GINI = ImpurityKind.GINI
SSE = ImpurityKind.SQUARED_ERROR

def brute_force_numeric(x, y, kind):
    """Every midpoint scored directly, first minimum kept"""
    values = np.unique(x)
    best = (np.inf, None)
    for lo, hi in zip(values[:-1], values[1:]):
        t = midpoint(lo, hi)
        left = x <= t
        score = node_impurity(y[left], kind) + node_impurity(y[~left], kind)
        if score < best[0] - 1e-12 * (abs(score) + 1):
            best = (score, t)
    return best

class TestNodeImpurity:
    def test_gini_balanced(self):
        assert node_impurity([1, 1, 0, 0], GINI) == 1.0

    def test_sse_pure(self):
        assert node_impurity([2, 2, 2], SSE) == 0.0

    def test_sse_pair(self):
        assert node_impurity([0, 2], SSE) == 2.0

    def test_empty(self):
        with pytest.raises(SplitInputError):
            node_impurity([], SSE)

    def test_gini_needs_binary(self):
        with pytest.raises(SplitInputError):
            node_impurity([0, 2], GINI)

    def test_parse_aliases(self):
        assert ImpurityKind.parse("squared-error") == SSE
        assert ImpurityKind.parse("GINI") == GINI
        with pytest.raises(SplitInputError):
            ImpurityKind.parse("entropy")

    @pytest.mark.parametrize("kind", [GINI, SSE])
    def test_parse_accepts_members(self, kind):
        assert ImpurityKind.parse(kind) is kind

class TestNumericSplit:
    def test_perfect_separation(self):
        result = best_split_numeric([1, 2, 3, 4], [0, 0, 1, 1], GINI)
        assert result.rule.threshold == 2.5
        assert result.impurity == 0.0
        assert result.node_impurity == 1.0

    def test_constant_response_ties_to_smallest_threshold(self):
        result = best_split_numeric([1, 2, 3], [5, 5, 5], SSE)
        assert result.rule.threshold == 1.5
        assert result.impurity == 0.0

    def test_all_values_equal(self):
        result = best_split_numeric([3, 3, 3], [0, 1, 2], SSE)
        assert result.rule is None
        assert result.impurity == result.node_impurity == 2.0

    def test_min_leaf_infeasible(self):
        result = best_split_numeric([1, 2, 3], [0, 1, 2], SSE, min_leaf=2)
        assert not result.found

    def test_min_leaf_respected(self):
        result = best_split_numeric([1, 2, 3, 4, 5], [9, 0, 0, 0, 0], SSE, min_leaf=2)
        assert result.rule.threshold == 2.5

    @pytest.mark.parametrize("kind", [GINI, SSE])
    def test_matches_every_midpoint(self, kind):
        rng = np.random.default_rng(11)
        x = np.round(rng.standard_normal(50), 1)
        y = (rng.random(50) < 0.4).astype(float) if kind == GINI else rng.standard_normal(50)
        result = best_split_numeric(x, y, kind)
        score, threshold = brute_force_numeric(x, y, kind)
        assert result.rule.threshold == threshold
        assert result.impurity == pytest.approx(score, rel=1e-9, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(SplitInputError):
            best_split_numeric([1, 2], [1.0], SSE)

class TestSplitInvariants:
    @pytest.mark.parametrize("transform", [lambda x: 3.0 * x + 1.0, np.exp, lambda x: x ** 3])
    def test_increasing_transform_keeps_the_partition(self, transform):
        rng = np.random.default_rng(21)
        for _ in range(20):
            x = rng.standard_normal(60)
            y = rng.standard_normal(60)
            base = best_split_numeric(x, y, SSE)
            moved = best_split_numeric(transform(x), y, SSE)
            np.testing.assert_array_equal(x <= base.rule.threshold, transform(x) <= moved.rule.threshold)
            assert moved.impurity == pytest.approx(base.impurity, rel=1e-9)

    def test_response_scale_scales_the_impurity(self):
        rng = np.random.default_rng(22)
        x, y = rng.standard_normal(50), rng.standard_normal(50)
        base = best_split_numeric(x, y, SSE)
        scaled = best_split_numeric(x, 4.0 * y + 7.0, SSE)
        assert scaled.rule.threshold == base.rule.threshold
        assert scaled.impurity == pytest.approx(16.0 * base.impurity, rel=1e-9)

    def test_gini_and_squared_error_agree_on_binary_responses(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            x = np.round(rng.standard_normal(40), 1)
            y = (rng.random(40) < 0.4).astype(float)
            gini, sse = best_split_numeric(x, y, GINI), best_split_numeric(x, y, SSE)
            assert gini.impurity == pytest.approx(sse.impurity, rel=1e-9, abs=1e-12)
            for rule in (gini.rule, sse.rule):
                left = x <= rule.threshold
                score = node_impurity(y[left], GINI) + node_impurity(y[~left], GINI)
                assert score == pytest.approx(gini.impurity, rel=1e-9, abs=1e-12)

    def test_children_impurities_add_up(self):
        rng = np.random.default_rng(24)
        x, y = rng.standard_normal(40), rng.standard_normal(40)
        result = best_split_numeric(x, y, SSE)
        left = x <= result.rule.threshold
        assert result.impurity == pytest.approx(node_impurity(y[left], SSE) + node_impurity(y[~left], SSE))
        assert result.impurity <= result.node_impurity

class TestCategoricalSplit:
    # categories a=0: {1, 1}, b=1: {0, 1}, c=2: {0, 0}
    X = [0, 0, 1, 1, 2, 2]
    Y = [1, 1, 0, 1, 0, 0]

    def test_sorted_mean_scan_tie_break(self):
        result = best_split_categorical(self.X, self.Y, GINI)
        assert result.rule.left_categories == frozenset({2})
        assert result.impurity == 0.75

    def test_exhaustive_agrees(self):
        result = best_split_exhaustive_categorical(self.X, self.Y, GINI)
        assert result.impurity == 0.75
        assert 0 in result.rule.left_categories

    def test_two_categories(self):
        x, y = [0, 0, 1, 1, 1], [1.0, 2.0, 5.0, 6.0, 7.0]
        fast = best_split_categorical(x, y, SSE)
        exhaustive = best_split_exhaustive_categorical(x, y, SSE)
        assert fast.rule.left_categories == frozenset({0})
        assert fast.impurity == pytest.approx(exhaustive.impurity)

    def test_single_occupied_category(self):
        result = best_split_categorical([1, 1, 1], [0.0, 1.0, 2.0], SSE, n_categories=3)
        assert result.rule is None

    @pytest.mark.parametrize("kind", [GINI, SSE])
    def test_matches_exhaustive_on_random_instances(self, kind):
        rng = np.random.default_rng(5)
        for _ in range(200):
            k = int(rng.integers(2, 11))
            n = int(rng.integers(k, 61))
            x = rng.integers(0, k, size=n)
            y = (rng.random(n) < 0.5).astype(float) if kind == GINI else rng.standard_normal(n)
            fast = best_split_categorical(x, y, kind, n_categories=k)
            exhaustive = best_split_exhaustive_categorical(x, y, kind, n_categories=k)
            assert fast.found == exhaustive.found
            assert fast.impurity == pytest.approx(exhaustive.impurity, rel=1e-10, abs=1e-12)

    def test_exhaustive_refuses_many_categories(self):
        x = np.arange(21)
        with pytest.raises(ExhaustiveSearchRefused):
            best_split_exhaustive_categorical(x, np.zeros(21), SSE)

    def test_canonical_rule(self):
        rule = SplitRule(0, left_categories={2})
        assert rule.canonical([0, 1, 2]).left_categories == frozenset({0, 1})

class TestApplySplit:
    def test_threshold(self):
        d = build_dataset({"x": [1.0, 2.0, 3.0]}, [0.0, 0.0, 0.0])
        left, right = apply_split(SplitRule(0, threshold=1.5), d)
        assert list(left) == [0]
        assert list(right) == [1, 2]

    def test_categorical(self):
        d = build_dataset({"c": TestCategoricalSplit.X}, TestCategoricalSplit.Y, categories={"c": 3})
        left, right = apply_split(SplitRule(0, left_categories={2}), d)
        assert list(left) == [4, 5]
        assert list(right) == [0, 1, 2, 3]

    def test_rule_needs_one_kind(self):
        with pytest.raises(SplitInputError):
            SplitRule(0)
