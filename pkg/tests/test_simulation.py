"""
Tests for the synthetic generators and experiment drivers
"""
import numpy as np
import pandas as pd
import pytest

from modules.simulation import (InteractionModelParams, FixedDesign, gen_interaction_model, gen_uninformative,
                                interaction_signal, category_labels, ExperimentSeries, read_series, SERIES_COLUMNS,
                                run_alpha_sweep, run_k_sweep, run_df_experiment, default_learners, holdout_split,
                                SimulationError)
from modules.config.settings import settings

def _paired_gap(series, sweep, learner, reference):
    """Mean and standard error of the per-replicate loss difference learner − reference"""
    diff = series.losses[(float(sweep), learner)] - series.losses[(float(sweep), reference)]
    return float(diff.mean()), float(diff.std(ddof=1) / np.sqrt(diff.size))

class TestGenerators:
    @pytest.mark.parametrize("k", [1, 3, 51])
    def test_interaction_model_needs_even_k(self, k):
        with pytest.raises(SimulationError):
            InteractionModelParams(100, k, 1.0)

    def test_same_seed_same_data(self):
        a = gen_interaction_model(InteractionModelParams(50, 10, 2.0, seed=4))
        b = gen_interaction_model(InteractionModelParams(50, 10, 2.0, seed=4))
        np.testing.assert_array_equal(a.y, b.y)
        np.testing.assert_array_equal(a.feature(1), b.feature(1))

    def test_layout(self):
        d = gen_interaction_model(InteractionModelParams(20, 6, 1.0))
        assert d.feature_names == ["x1", "x2"]
        assert d.dictionaries[1] == category_labels(6) == ("c1", "c2", "c3", "c4", "c5", "c6")

    def test_signal_strength(self):
        d = gen_interaction_model(InteractionModelParams(10000, 50, 15.0, seed=1))
        signal = interaction_signal(d.feature(0), d.feature(1), 50)
        assert d.y[signal == 1].mean() == pytest.approx(15.0, abs=0.1)
        assert d.y[signal == 0].mean() == pytest.approx(0.0, abs=0.1)

    def test_signal_needs_both_features(self):
        x1 = np.array([1.0, 1.0, -1.0, -1.0])
        codes = np.array([0, 3, 0, 3])
        assert list(interaction_signal(x1, codes, 4)) == [1.0, 0.0, 0.0, 1.0]

    def test_zero_alpha_is_pure_noise(self):
        d = gen_interaction_model(InteractionModelParams(5000, 10, 0.0, seed=2))
        assert abs(np.corrcoef(d.feature(0), d.y)[0, 1]) < 0.05

    def test_uninformative_model(self):
        d = gen_uninformative(5000, 20, seed=3)
        assert np.var(d.y - d.feature(0)) == pytest.approx(1.0, abs=0.1)
        with pytest.raises(SimulationError):
            gen_uninformative(1, 20)

    def test_fixed_design_redraws_only_the_response(self):
        design = FixedDesign.interaction(InteractionModelParams(40, 4, 3.0, seed=5))
        a = design.sample(np.random.default_rng(0))
        b = design.sample(np.random.default_rng(1))
        np.testing.assert_array_equal(a.feature(0), b.feature(0))
        assert not np.array_equal(a.y, b.y)
        np.testing.assert_array_equal(design.mean, 3.0 * interaction_signal(a.feature(0), a.feature(1), 4))

    def test_holdout_split(self):
        train, test = holdout_split(gen_uninformative(10, 4))
        assert (train.n, test.n) == (9, 1)

class TestSeries:
    def test_aggregate_and_csv(self, tmp_path):
        series = ExperimentSeries.aggregate("demo", {(1.0, "a"): np.array([1.0, 3.0]), (1.0, "b"): np.array([2.0])})
        assert series.means("a") == {1.0: 2.0}
        assert series.rows[0].stderr == pytest.approx(1.0)
        assert series.rows[1].stderr == 0.0
        path = tmp_path / "series.csv"
        series.write_csv(str(path), str(tmp_path / "reps.csv"))
        assert list(pd.read_csv(path).columns) == SERIES_COLUMNS
        assert len(pd.read_csv(tmp_path / "reps.csv")) == 3
        assert read_series(str(path)).learners() == ["a", "b"]

    def test_read_rejects_other_headers(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("x,y\n1,2\n")
        with pytest.raises(SimulationError):
            read_series(str(path))

class TestExperiments:
    def test_default_learners(self):
        assert [l.name for l in default_learners()] == ["cart-limited-k", "cart-unlimited-k", "aloof"]

    def test_small_alpha_sweep(self):
        series = run_alpha_sweep(alphas=(0.0, 5.0), n=60, k=4, reps=2, n_test=50, seed=1)
        assert len(series.rows) == 6
        assert {row.reps for row in series.rows} == {2}
        assert series.learners() == ["cart-limited-k", "cart-unlimited-k", "aloof"]

    def test_alpha_sweep_is_reproducible_in_parallel(self):
        serial = run_alpha_sweep(alphas=(2.0,), n=40, k=4, reps=2, n_test=20, seed=3)
        parallel = run_alpha_sweep(alphas=(2.0,), n=40, k=4, reps=2, n_test=20, seed=3, n_jobs=2)
        assert serial.frame().equals(parallel.frame())

    def test_small_k_sweep_adds_the_oracle(self):
        series = run_k_sweep(ks=(4, 6), n=60, reps=2, seed=2)
        assert "cart-oracle" in series.learners()
        assert len(series.rows) == 8
        assert series.name == "k-sweep-uninformative"

    def test_informative_k_sweep_needs_even_k(self):
        with pytest.raises(SimulationError):
            run_k_sweep(ks=(5,), n=60, informative=True, reps=1)

    def test_small_df_experiment(self, tmp_path):
        curves = run_df_experiment(ks=(4,), n=40, reps=10, leaf_grid=(1, 2, 3), n_test=50)
        assert [(p.learner, p.leaves) for p in curves.points] == [("cart", 1), ("cart", 2), ("cart", 3),
                                                                  ("aloof", None)]
        assert curves.for_k(4, "cart")[0].df == pytest.approx(1.0, abs=1.5)
        assert all(p.df >= 0 for p in curves.points)
        path = tmp_path / "df.csv"
        curves.write_csv(str(path))
        assert list(pd.read_csv(path).columns) == ["k", "learner", "leaves", "df", "df_stderr", "mse",
                                                   "mse_stderr", "reps"]

    @pytest.mark.slow
    def test_loo_selection_beats_limited_k_on_wide_interactions(self):
        series = run_alpha_sweep(alphas=(15.0,), n=300, k=50, reps=5, n_test=500, seed=0, n_jobs=2)
        means = {learner: series.means(learner)[15.0] for learner in series.learners()}
        assert means["aloof"] < means["cart-limited-k"]

    @pytest.mark.slow
    def test_loo_selection_tracks_the_better_cart_at_every_alpha(self):
        series = run_alpha_sweep(reps=50, seed=0, n_jobs=4)
        for alpha in settings.ALPHA_GRID:
            means = {learner: series.means(learner)[alpha] for learner in series.learners()}
            better = min(("cart-limited-k", "cart-unlimited-k"), key=means.get)
            gap, stderr = _paired_gap(series, alpha, "aloof", better)
            assert gap <= 0.02 + 2 * stderr, f"alpha={alpha}"

    @pytest.mark.slow
    def test_unsplit_categorical_keeps_loo_close_to_the_oracle(self):
        series = run_k_sweep(reps=50, seed=0, n_jobs=4)
        for k in settings.K_GRID:
            means = {learner: series.means(learner)[float(k)] for learner in series.learners()}
            assert means["aloof"] <= 1.05 * means["cart-oracle"], f"K={k}"
            if k >= 50:
                gap, stderr = _paired_gap(series, k, "aloof", "cart-unlimited-k")
                assert gap <= 2 * stderr, f"K={k}"
