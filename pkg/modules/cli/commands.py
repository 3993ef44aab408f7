"""
Subcommand handlers

Each handler takes the parsed arguments, calls into the library and
returns the process exit code. Results go to the --out files and a short
summary to stdout; progress goes to the log.
"""
import logging
import os
from dataclasses import replace
from typing import Dict, Callable, Optional

import numpy as np
import pandas as pd

from modules.config.utils import derive_rng, derive_seed, ensure_parent_dir
from modules.dataio.dataset import Dataset
from modules.dataio.loader import load_dataset
from modules.ensembles.boosting import GbConfig
from modules.ensembles.forest import RfConfig, fit_random_forest
from modules.ensembles.importance import oob_permutation_importance
from modules.ensembles.model import EnsembleModel
from modules.ensembles.serialization import save_model, load_model
from modules.evaluation.cross_validation import cross_validate, default_metric
from modules.evaluation.learners import LearnerSpec, LearnerKind
from modules.evaluation.metrics import observation_losses
from modules.evaluation.reports import write_fold_report, write_summary, summary_frame
from modules.evaluation.significance import sign_test, paired_holdout_test
from modules.simulation.experiments import run_alpha_sweep, run_k_sweep, run_df_experiment
from modules.splits.impurity import ImpurityKind
from modules.trees.builder import GrowConfig, Selector
from modules.trees.model import TreeModel, render_tree
from .bench import bench, bench_frame, write_bench
from .exceptions import CommandError

logger = logging.getLogger(__name__)

def grow_config(args) -> GrowConfig:
    min_node = args.min_node if args.min_node is not None else max(2, 2 * args.min_leaf)
    return GrowConfig(selector=Selector(args.selector),
                      kind=ImpurityKind.parse(args.impurity) if args.impurity else None,
                      max_depth=args.max_depth, min_leaf=args.min_leaf, min_node=min_node,
                      max_categories=args.max_categories, loo_folds=args.loo_folds, stop_margin=args.stop_margin,
                      stop_z=args.stop_z, lookahead_z=args.lookahead_z, n_jobs=args.threads)

def gb_config(args) -> GbConfig:
    return GbConfig(trees=args.gb_trees, learning_rate=args.gb_nu, min_node_fraction=args.gb_min_frac,
                    selector=Selector(args.selector), max_depth=args.max_depth,
                    max_categories=args.max_categories, stop_margin=args.stop_margin, stop_z=args.stop_z,
                    lookahead_z=args.lookahead_z, n_jobs=args.threads)

def rf_config(args) -> RfConfig:
    grow = grow_config(args)
    return RfConfig(trees=args.rf_trees, bootstrap=args.bootstrap, max_features=args.rf_mtry,
                    selector=grow.selector, min_leaf=grow.min_leaf, min_node=grow.min_node,
                    max_depth=grow.max_depth, max_categories=grow.max_categories, stop_margin=grow.stop_margin,
                    stop_z=grow.stop_z, lookahead_z=grow.lookahead_z, n_jobs=args.threads)

def learner_spec(args, kind: Optional[LearnerKind] = None) -> LearnerSpec:
    """The learner named by the tree and ensemble flags, or by an explicit kind"""
    if kind is None:
        if args.ensemble == "gb":
            kind = LearnerKind.GRADIENT_BOOSTING
        elif args.ensemble == "rf":
            kind = LearnerKind.RANDOM_FOREST
        elif args.selector == "aloof":
            kind = LearnerKind.ALOOF
        else:
            kind = LearnerKind.CART if args.prune else LearnerKind.CART_UNPRUNED
    grow = grow_config(args)
    if kind == LearnerKind.ALOOF:
        grow = replace(grow, selector=Selector.ALOOF)
    elif kind in (LearnerKind.CART, LearnerKind.CART_UNPRUNED):
        grow = replace(grow, selector=Selector.CART)
    return LearnerSpec(kind, grow=grow, gb=gb_config(args), rf=rf_config(args))

def _load(args) -> Dataset:
    return load_dataset(args.data, args.schema)

def _summary_path(out: str) -> str:
    stem, ext = os.path.splitext(out)
    return f"{stem}_summary{ext or '.csv'}"

def cmd_train(args) -> int:
    d = _load(args)
    learner = learner_spec(args)
    model = learner.fit(d, args.seed)
    save_model(model, args.out)
    if isinstance(model, TreeModel):
        print(f"{learner.name}: {model.n_leaves} leaves, depth {model.depth} -> {args.out}")
    else:
        print(f"{learner.name}: {model.n_members} trees -> {args.out}")
    return 0

def cmd_predict(args) -> int:
    model = load_model(args.model)
    d = _load(args)
    prediction = model.predict(d)
    frame = pd.DataFrame({"row": np.arange(d.n), "prediction": prediction})
    if d.is_classification:
        frame["class"] = (prediction > 0.5).astype(np.int64)
    ensure_parent_dir(args.out)
    frame.to_csv(args.out, index=False, float_format="%.10g")
    print(f"{d.n} predictions -> {args.out}")
    return 0

def cmd_cv(args) -> int:
    d = _load(args)
    learner = learner_spec(args)
    report = cross_validate(learner, d, args.k, args.seed, args.metric, n_jobs=args.threads)
    if args.out:
        write_fold_report([report], args.out)
    summary = args.summary or (_summary_path(args.out) if args.out else None)
    if summary:
        write_summary([report], summary)
    print(summary_frame([report]).to_string(index=False))
    return 0

def cmd_importance(args) -> int:
    d = _load(args)
    model = fit_random_forest(d, replace(rf_config(args), seed=args.seed))
    report = oob_permutation_importance(model, d, seed=derive_seed(args.seed, 1), n_jobs=args.threads)
    rows = report.as_rows()[:args.top] if args.top else report.as_rows()
    frame = pd.DataFrame(rows, columns=["rank", "feature", "score", "stderr"])
    if args.out:
        ensure_parent_dir(args.out)
        frame.to_csv(args.out, index=False, float_format="%.10g")
    print(frame.to_string(index=False))
    return 0

def holdout_split(d: Dataset, test_fraction: float, seed: int):
    if not 0 < test_fraction < 1:
        raise CommandError("--test-fraction must lie strictly between 0 and 1")
    n_test = int(round(d.n * test_fraction))
    if not 2 <= n_test < d.n:
        raise CommandError(f"A test fraction of {test_fraction} leaves {n_test} of {d.n} rows for testing")
    order = derive_rng(seed, 0).permutation(d.n)
    return d.subset(np.sort(order[n_test:])), d.subset(np.sort(order[:n_test]))

def cmd_holdout(args) -> int:
    d = _load(args)
    train, test = holdout_split(d, args.test_fraction, args.seed)
    kind = default_metric(d)
    losses = {}
    for i, name in enumerate((args.learner_a, args.learner_b)):
        learner = learner_spec(args, LearnerKind(name))
        prediction = learner.fit(train, derive_seed(args.seed, i + 1)).predict(test)
        losses[name if name not in losses else f"{name}-b"] = observation_losses(kind, prediction, test.y)
    (name_a, loss_a), (name_b, loss_b) = losses.items()
    result = paired_holdout_test(loss_a, loss_b)
    if args.out:
        ensure_parent_dir(args.out)
        pd.DataFrame({"row": test.rows, name_a: loss_a, name_b: loss_b}).to_csv(
            args.out, index=False, float_format="%.10g")
    print(f"{name_a} {kind.value}={loss_a.mean():.6g}  {name_b} {kind.value}={loss_b.mean():.6g}  "
          f"n_test={result.n}  p={result.p_value:.4g}")
    return 0

def cmd_show(args) -> int:
    model = load_model(args.model)
    if isinstance(model, EnsembleModel):
        if not 0 <= args.member < model.n_members:
            raise CommandError(f"Member {args.member} outside [0, {model.n_members})")
        model = model.members[args.member]
    print(render_tree(model, args.max_depth))
    return 0

def cmd_sign_test(args) -> int:
    result = sign_test(args.wins, args.trials, exact=args.exact)
    print(f"wins={result.wins} trials={result.trials} p={result.reported:.4g} ({result.method}) "
          f"p_exact={result.p_exact:.4g}")
    return 0

def cmd_bench(args) -> int:
    results = bench(args.case, args.n_grid, args.k_grid, args.seed, args.repeats)
    if args.out:
        write_bench(results, args.out)
    print(bench_frame(results).to_string(index=False))
    return 0

def cmd_simulate(args) -> int:
    if args.experiment == "alpha-sweep":
        series = run_alpha_sweep(args.alphas, n=args.n, k=args.k_categories, reps=args.reps, seed=args.seed,
                                 n_test=args.n_test, n_jobs=args.threads)
    elif args.experiment == "k-sweep":
        series = run_k_sweep(args.k_grid, n=args.n, informative=args.informative, alpha=args.alpha,
                             reps=args.reps, seed=args.seed, n_jobs=args.threads)
    else:
        curves = run_df_experiment(args.k_grid, n=args.n, reps=args.reps,
                                   leaf_grid=tuple(range(1, args.max_leaves + 1)), seed=args.seed,
                                   n_test=args.n_test, n_jobs=args.threads)
        curves.write_csv(args.out)
        print(f"{len(curves.points)} df points -> {args.out}")
        return 0
    series.write_csv(args.out, args.replicates_out)
    print(f"{len(series.rows)} series rows -> {args.out}")
    return 0

COMMANDS: Dict[str, Callable] = {
    "train": cmd_train,
    "predict": cmd_predict,
    "cv": cmd_cv,
    "importance": cmd_importance,
    "holdout": cmd_holdout,
    "show": cmd_show,
    "sign-test": cmd_sign_test,
    "bench": cmd_bench,
    "simulate": cmd_simulate,
}
