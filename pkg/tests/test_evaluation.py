"""
Tests for metrics, cross-validation, df estimation and significance tests
"""
import math

import numpy as np
import pandas as pd
import pytest

from modules.dataio import FoldAssignment
from modules.evaluation import (LearnerSpec, LearnerKind, MetricKind, metric, auc, observation_losses,
                                cross_validate, estimate_df, sign_test, paired_holdout_test, fold_frame,
                                write_fold_report, write_summary, MetricError, EvaluationError,
                                InsufficientReplicatesError)
from modules.simulation import FixedDesign
from tests.factories import build_dataset

class TestMetrics:
    def test_mse(self):
        assert metric("mse", [1.0, 2.0], [0.0, 0.0]) == 2.5

    def test_misclassification_thresholds_at_one_half(self):
        losses = observation_losses(MetricKind.MISCLASSIFICATION, [0.6, 0.4, 0.5], [1, 0, 1])
        assert list(losses) == [0.0, 0.0, 1.0]
        assert metric("misclassification", [0.6, 0.4, 0.5], [1, 0, 1]) == pytest.approx(1 / 3)

    def test_auc(self):
        assert auc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == 0.75
        assert auc([0.5, 0.5], [0, 1]) == 0.5

    def test_auc_needs_both_classes(self):
        with pytest.raises(MetricError):
            auc([0.1, 0.2], [1, 1])

    def test_length_mismatch(self):
        with pytest.raises(MetricError):
            metric("mse", [1.0], [1.0, 2.0])

class TestSignTest:
    @pytest.mark.parametrize("wins, exact", [(10, 1 / 1024), (9, 11 / 1024), (8, 56 / 1024)])
    def test_exact_tail(self, wins, exact):
        assert sign_test(wins, 10).p_exact == pytest.approx(exact)

    def test_normal_approximation(self):
        assert sign_test(8, 10).p_value == pytest.approx(0.057, abs=0.002)
        assert sign_test(8, 10).p_value == pytest.approx(0.05, abs=0.01)
        assert sign_test(5, 10).p_value > 0.5

    def test_invalid_counts(self):
        with pytest.raises(MetricError):
            sign_test(11, 10)
        with pytest.raises(MetricError):
            sign_test(0, 0)

class TestPairedTest:
    def test_identical_losses(self):
        result = paired_holdout_test([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert result.p_value == 0.5
        assert result.mean_difference == 0.0

    def test_constant_improvement(self):
        assert paired_holdout_test([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]).p_value < 1e-12
        assert paired_holdout_test([1.0, 1.0, 1.0], [0.0, 0.0, 0.0]).p_value == 1.0

    def test_noisy_improvement(self):
        rng = np.random.default_rng(0)
        b = rng.random(200) + 1.0
        a = b - 0.5 + 0.1 * rng.standard_normal(200)
        result = paired_holdout_test(a, b)
        assert result.p_value < 1e-6
        assert result.statistic < 0

    def test_length_mismatch(self):
        with pytest.raises(MetricError):
            paired_holdout_test([1.0, 2.0], [1.0])

class TestCrossValidation:
    def test_gap_is_learned_without_error(self, gapped):
        report = cross_validate(LearnerSpec.cart(pruned=False), gapped, k=2, seed=0)
        assert report.k == 2
        assert report.mean == 0.0
        assert report.invalid_count == 0

    def test_out_of_fold_predictions(self):
        d = build_dataset({"x": [1.0, 2.0, 3.0, 4.0]}, [1.0, 3.0, 5.0, 7.0])
        folds = FoldAssignment.from_folds([0, 1, 0, 1])
        report = cross_validate(LearnerSpec(LearnerKind.MEAN), d, folds=folds)
        np.testing.assert_allclose(report.predictions, [5.0, 3.0, 5.0, 3.0])
        assert report.mean == pytest.approx(np.mean((report.predictions - d.y) ** 2))

    def test_undefined_metric_marks_fold_invalid(self, separable):
        folds = FoldAssignment.from_folds([0, 0, 1, 1])
        report = cross_validate(LearnerSpec.cart(pruned=False), separable, metric_kind="auc", folds=folds)
        assert report.invalid_count == 2
        assert math.isnan(report.mean)
        assert all("both classes" in f.reason for f in report.folds)

    def test_small_training_fold_is_invalid(self, separable):
        learner = LearnerSpec.cart(pruned=False, min_leaf=2, min_node=4)
        report = cross_validate(learner, separable, k=2, seed=0)
        assert report.invalid_count == 2
        assert np.all(np.isnan(report.predictions))

    def test_parallel_matches_serial(self, regression_data):
        learner = LearnerSpec.aloof()
        serial = cross_validate(learner, regression_data, k=5, seed=3)
        parallel = cross_validate(learner, regression_data, k=5, seed=3, n_jobs=2)
        np.testing.assert_array_equal(serial.valid_values, parallel.valid_values)

    def test_assignment_must_cover_dataset(self, separable):
        with pytest.raises(EvaluationError):
            cross_validate(LearnerSpec(LearnerKind.MEAN), separable, folds=FoldAssignment.from_folds([0, 1]))

    def test_reports(self, gapped, tmp_path):
        reports = [cross_validate(LearnerSpec.cart(pruned=False), gapped, k=2),
                   cross_validate(LearnerSpec.aloof(), gapped, k=2)]
        assert len(fold_frame(reports)) == 4
        write_fold_report(reports, str(tmp_path / "folds.csv"))
        write_summary(reports, str(tmp_path / "summary.csv"))
        summary = pd.read_csv(tmp_path / "summary.csv")
        assert list(summary.columns) == ["learner", "metric", "k", "seed", "mean", "valid_folds"]
        assert list(summary["learner"]) == ["cart-unpruned", "aloof"]
        assert list(pd.read_csv(tmp_path / "folds.csv")["fold"]) == [0, 1, 0, 1]

class TestDegreesOfFreedom:
    def test_mean_learner_has_one_df(self):
        estimate = estimate_df(FixedDesign.linear(50, 3, seed=0), LearnerSpec(LearnerKind.MEAN), reps=200, seed=1)
        assert abs(estimate.df - 1.0) < 4 * estimate.stderr
        assert estimate.replicates == 200

    def test_least_squares_df_is_the_number_of_regressors(self):
        learner = LearnerSpec(LearnerKind.LEAST_SQUARES, intercept=False)
        estimate = estimate_df(FixedDesign.linear(50, 3, seed=0), learner, reps=1000, seed=2)
        assert abs(estimate.df - 3.0) < 4 * estimate.stderr
        assert estimate.training_mse < 1.0

    def test_test_set_error(self):
        design = FixedDesign.linear(40, 2, seed=0)
        test = design.sample(np.random.default_rng(5))
        estimate = estimate_df(design, LearnerSpec(LearnerKind.MEAN), reps=20, test=test)
        assert estimate.test_mse > 0
        assert not math.isnan(estimate.test_stderr)

    def test_needs_replicates(self):
        with pytest.raises(InsufficientReplicatesError):
            estimate_df(FixedDesign.linear(20, 1), LearnerSpec(LearnerKind.MEAN), reps=5)
