"""
Tests for gradient boosting, random forests and OOB importance
"""
import json

import numpy as np
import pytest

from modules.config.utils import derive_seed
from modules.ensembles import (GbConfig, GbLoss, RfConfig, EnsembleKind, fit_gradient_boosting, fit_random_forest,
                               bootstrap_sample, oob_permutation_importance, ensemble_from_document, dumps_ensemble,
                               save_model, load_model, EnsembleConfigError)
from modules.simulation import InteractionModelParams, gen_interaction_model
from modules.splits import ImpurityKind
from modules.trees import grow_tree, TreeModel
from tests.factories import build_dataset

def _with_constant(d):
    return build_dataset({"x1": d.feature(0), "x2": d.feature(1), "g": d.feature(2), "const": np.zeros(d.n)},
                         d.y, categories={"g": 4})

class TestGradientBoosting:
    def test_single_stage_adds_one_tree(self, regression_data):
        model = fit_gradient_boosting(regression_data, GbConfig(trees=1, learning_rate=1.0))
        assert model.kind == EnsembleKind.GRADIENT_BOOSTING
        assert model.n_members == 1
        expected = model.base + model.members[0].predict(regression_data)
        np.testing.assert_allclose(model.predict(regression_data), expected)
        assert model.base == pytest.approx(regression_data.y.mean())

    def test_constant_response_keeps_the_base(self):
        d = build_dataset({"x": [1.0, 2.0, 3.0, 4.0]}, [3.0, 3.0, 3.0, 3.0])
        model = fit_gradient_boosting(d, GbConfig(trees=5))
        assert model.n_members == 0
        np.testing.assert_array_equal(model.predict(d), np.full(4, 3.0))

    def test_training_error_shrinks(self, regression_data):
        y = regression_data.y
        few = fit_gradient_boosting(regression_data, GbConfig(trees=2))
        many = fit_gradient_boosting(regression_data, GbConfig(trees=30))
        assert np.mean((many.predict(regression_data) - y) ** 2) < np.mean((few.predict(regression_data) - y) ** 2)

    def test_deviance_gives_probabilities(self, gapped):
        model = fit_gradient_boosting(gapped, GbConfig(trees=10))
        assert model.loss == GbLoss.DEVIANCE
        p = model.predict(gapped)
        assert np.all((p > 0) & (p < 1))
        np.testing.assert_array_equal(model.predict_class(gapped), gapped.y.astype(np.int64))

    def test_deviance_needs_binary_response(self, regression_data):
        with pytest.raises(EnsembleConfigError):
            fit_gradient_boosting(regression_data, GbConfig(loss="deviance"))

    def test_aloof_sub_learners(self, regression_data):
        model = fit_gradient_boosting(regression_data, GbConfig(trees=3, selector="aloof"))
        assert all(isinstance(t, TreeModel) for t in model.members)
        assert model.config["selector"] == "aloof"

    def test_stage_trees_use_squared_error(self, gapped):
        cfg = GbConfig(trees=2)
        assert cfg.tree_config(100).kind == ImpurityKind.SQUARED_ERROR
        model = fit_gradient_boosting(gapped, cfg)
        assert all(t.impurity == ImpurityKind.SQUARED_ERROR for t in model.members)

    @pytest.mark.parametrize("kwargs", [{"trees": 0}, {"learning_rate": 0.0}, {"learning_rate": 1.5},
                                        {"min_node_fraction": 0.7}])
    def test_invalid_settings(self, kwargs):
        with pytest.raises(EnsembleConfigError):
            GbConfig(**kwargs)

class TestRandomForest:
    def test_bootstrap_sample(self):
        sample, oob = bootstrap_sample(50, 3)
        assert sample.size == 50
        assert not set(oob.tolist()) & set(sample.tolist())
        assert set(oob.tolist()) | set(sample.tolist()) == set(range(50))

    def test_single_full_tree_matches_plain_growth(self, regression_data):
        cfg = RfConfig(trees=1, bootstrap=False, max_features=regression_data.p)
        model = fit_random_forest(regression_data, cfg)
        tree = grow_tree(regression_data, cfg.tree_config(regression_data.p, derive_seed(0, 0)))
        np.testing.assert_array_equal(model.predict(regression_data), tree.predict(regression_data))

    def test_parallel_fit_matches_serial(self, regression_data):
        serial = fit_random_forest(regression_data, RfConfig(trees=6, seed=5))
        parallel = fit_random_forest(regression_data, RfConfig(trees=6, seed=5, n_jobs=2))
        assert dumps_ensemble(serial) == dumps_ensemble(parallel)

    def test_member_seeds_and_oob(self, regression_data):
        model = fit_random_forest(regression_data, RfConfig(trees=4, seed=9))
        assert model.seeds == tuple(derive_seed(9, i) for i in range(4))
        assert all(oob.size > 0 for oob in model.oob_rows)

    def test_default_m_try(self, regression_data, separable):
        assert RfConfig().m_try(regression_data) == 1
        assert RfConfig().m_try(separable) == 1
        with pytest.raises(EnsembleConfigError):
            RfConfig(max_features=9).m_try(regression_data)

    def test_classification_forest(self, gapped):
        model = fit_random_forest(gapped, RfConfig(trees=10))
        np.testing.assert_array_equal(model.predict_class(gapped), gapped.y.astype(np.int64))

class TestImportance:
    def test_strong_feature_ranks_first_and_unused_scores_zero(self, regression_data):
        d = _with_constant(regression_data)
        model = fit_random_forest(d, RfConfig(trees=30, seed=1))
        report = oob_permutation_importance(model, d, seed=2)
        assert report.features[0].name == "x1"
        scores = {f.name: f.score for f in report.features}
        assert scores["const"] == 0.0
        assert [row["rank"] for row in report.as_rows()] == [1, 2, 3, 4]

    def test_needs_bootstrap_forest(self, regression_data):
        model = fit_random_forest(regression_data, RfConfig(trees=2, bootstrap=False))
        with pytest.raises(EnsembleConfigError):
            oob_permutation_importance(model, regression_data)

    def test_needs_forest(self, regression_data):
        model = fit_gradient_boosting(regression_data, GbConfig(trees=2))
        with pytest.raises(EnsembleConfigError):
            oob_permutation_importance(model, regression_data)

class TestEnsembleDocuments:
    @pytest.mark.parametrize("fit", [lambda d: fit_gradient_boosting(d, GbConfig(trees=3)),
                                     lambda d: fit_random_forest(d, RfConfig(trees=3))])
    def test_round_trip(self, regression_data, tmp_path, fit):
        model = fit(regression_data)
        text = dumps_ensemble(model)
        assert dumps_ensemble(ensemble_from_document(json.loads(text))) == text
        path = str(tmp_path / "model.json")
        save_model(model, path)
        np.testing.assert_array_equal(load_model(path).predict(regression_data), model.predict(regression_data))

def _ensemble_losses(fit, reps: int):
    """Paired test MSE of LOO-selected and CART members on wide interaction data"""
    diffs = []
    for r in range(reps):
        train = gen_interaction_model(InteractionModelParams(n=1000, k=50, alpha=15.0, seed=derive_seed(40, r, 0)))
        test = gen_interaction_model(InteractionModelParams(n=1000, k=50, alpha=15.0, seed=derive_seed(40, r, 1)))
        losses = [np.mean((test.y - fit(train, selector, r).predict(test)) ** 2) for selector in ("aloof", "cart")]
        diffs.append(losses[0] - losses[1])
    return np.array(diffs)

@pytest.mark.slow
@pytest.mark.parametrize("fit", [
    lambda d, selector, r: fit_gradient_boosting(d, GbConfig(selector=selector, seed=r)),
    lambda d, selector, r: fit_random_forest(d, RfConfig(trees=25, selector=selector, seed=r, n_jobs=2)),
], ids=["gb", "rf"])
def test_loo_members_are_no_worse_than_cart_members(fit):
    diffs = _ensemble_losses(fit, reps=10)
    assert diffs.mean() <= 2 * diffs.std(ddof=1) / np.sqrt(diffs.size)
