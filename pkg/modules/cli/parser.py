"""
Argument parser for the aloof-trees command line
"""
import argparse

from modules.config.settings import settings
from modules.evaluation.learners import LearnerKind
from modules.evaluation.metrics import MetricKind
from .bench import BENCH_CASES

def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected on or off, got '{text}'")
    return text == "on"

def _data_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--data", required=True, help="CSV file with a header row")
    parent.add_argument("--schema", required=True, help="schema sidecar (one 'name:kind' line per column)")
    return parent

def _run_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=0, help="master seed for every random stream")
    parent.add_argument("--threads", type=int, default=1, help="worker processes (1 runs serially)")
    return parent

def _learner_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    tree = parent.add_argument_group("tree")
    tree.add_argument("--selector", choices=["cart", "aloof"], default="cart")
    tree.add_argument("--impurity", choices=["gini", "sse"], default=None,
                      help="default: gini for a binary response, sse otherwise")
    tree.add_argument("--max-categories", type=int, default=None,
                      help="ignore categorical features with more categories")
    tree.add_argument("--min-leaf", type=int, default=settings.DEFAULT_MIN_LEAF)
    tree.add_argument("--min-node", type=int, default=None, help="default: 2·min-leaf")
    tree.add_argument("--max-depth", type=int, default=None)
    tree.add_argument("--loo-folds", type=int, default=None, help="L-fold selection instead of exact LOO")
    tree.add_argument("--stop-margin", type=float, default=0.0,
                      help="aloof splits only when min L(j) < (1 - margin)·L0")
    tree.add_argument("--stop-z", type=float, default=settings.LOO_STOP_Z,
                      help="significance the best LOO improvement must reach (0 for the bare comparator)")
    tree.add_argument("--lookahead-z", type=float, default=settings.LOO_LOOKAHEAD_Z,
                      help="significance a child must reach to keep a would-be leaf splitting (0 disables)")
    tree.add_argument("--prune", type=_on_off, default=True, metavar="{on,off}",
                      help="cost-complexity pruning of cart trees")
    ensemble = parent.add_argument_group("ensemble")
    ensemble.add_argument("--ensemble", choices=["none", "gb", "rf"], default="none")
    ensemble.add_argument("--gb-trees", type=int, default=settings.GB_TREES)
    ensemble.add_argument("--gb-nu", type=float, default=settings.GB_LEARNING_RATE)
    ensemble.add_argument("--gb-min-frac", type=float, default=settings.GB_MIN_NODE_FRACTION)
    ensemble.add_argument("--rf-trees", type=int, default=settings.RF_TREES)
    ensemble.add_argument("--rf-mtry", type=int, default=None, help="default: ⌈√p⌉ for classification, ⌈p/3⌉ for regression")
    ensemble.add_argument("--bootstrap", type=_on_off, default=True, metavar="{on,off}")
    return parent

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=settings.APP_NAME,
                                     description="Decision trees with CART and leave-one-out variable selection")
    parser.add_argument("--log-level", default=None, help="overrides LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    data, run, learner = _data_flags(), _run_flags(), _learner_flags()

    train = sub.add_parser("train", parents=[data, learner, run], help="fit a tree or ensemble")
    train.add_argument("--out", required=True, help="model JSON file")

    predict = sub.add_parser("predict", parents=[data], help="apply a saved model")
    predict.add_argument("--model", required=True)
    predict.add_argument("--out", required=True, help="CSV with one prediction per row")

    cv = sub.add_parser("cv", parents=[data, learner, run], help="k-fold cross-validation")
    cv.add_argument("--k", type=int, default=settings.CV_FOLDS)
    cv.add_argument("--metric", choices=[m.value for m in MetricKind], default=None)
    cv.add_argument("--out", default=None, help="per-fold CSV")
    cv.add_argument("--summary", default=None, help="summary CSV (default: next to --out)")

    importance = sub.add_parser("importance", parents=[data, learner, run],
                                help="out-of-bag permutation importance of a random forest")
    importance.add_argument("--top", type=int, default=None)
    importance.add_argument("--out", default=None)

    holdout = sub.add_parser("holdout", parents=[data, learner, run],
                             help="paired test of two learners on one train/test split")
    learners = [k.value for k in LearnerKind]
    holdout.add_argument("--learner-a", choices=learners, default=LearnerKind.ALOOF.value)
    holdout.add_argument("--learner-b", choices=learners, default=LearnerKind.CART.value)
    holdout.add_argument("--test-fraction", type=float, default=settings.HOLDOUT_TEST_FRACTION)
    holdout.add_argument("--out", default=None, help="per-row loss CSV")

    show = sub.add_parser("show", help="print the top levels of a saved tree")
    show.add_argument("--model", required=True)
    show.add_argument("--max-depth", type=int, default=3)
    show.add_argument("--member", type=int, default=0, help="ensemble member to show")

    sign = sub.add_parser("sign-test", help="one-sided sign test of wins out of trials")
    sign.add_argument("--wins", type=int, required=True)
    sign.add_argument("--trials", type=int, required=True)
    sign.add_argument("--exact", action="store_true", help="report the exact binomial tail")

    bench = sub.add_parser("bench", parents=[run], help="time the split and LOO scorers")
    bench.add_argument("--case", nargs="+", choices=list(BENCH_CASES), default=list(BENCH_CASES))
    bench.add_argument("--n-grid", nargs="+", type=int, default=[1000, 2000])
    bench.add_argument("--k-grid", nargs="+", type=int, default=[10, 100])
    bench.add_argument("--repeats", type=int, default=settings.BENCH_REPEATS)
    bench.add_argument("--out", default=None)

    simulate = sub.add_parser("simulate", help="synthetic experiment series")
    experiments = simulate.add_subparsers(dest="experiment", required=True, metavar="experiment")

    alpha = experiments.add_parser("alpha-sweep", parents=[run], help="test MSE against interaction strength")
    alpha.add_argument("--n", type=int, default=300)
    alpha.add_argument("--k-categories", type=int, default=50)
    alpha.add_argument("--alphas", nargs="+", type=float, default=list(settings.ALPHA_GRID))
    alpha.add_argument("--n-test", type=int, default=settings.SIM_TEST_ROWS)

    k_sweep = experiments.add_parser("k-sweep", parents=[run], help="test MSE against the number of categories")
    k_sweep.add_argument("--n", type=int, default=1000)
    k_sweep.add_argument("--k-grid", nargs="+", type=int, default=list(settings.K_GRID))
    k_sweep.add_argument("--informative", action="store_true",
                         help="use the interaction model instead of an uninformative categorical")
    k_sweep.add_argument("--alpha", type=float, default=15.0)

    df = experiments.add_parser("df", parents=[run], help="degrees of freedom against test MSE")
    df.add_argument("--n", type=int, default=200)
    df.add_argument("--k-grid", nargs="+", type=int, default=list(settings.DF_K_GRID))
    df.add_argument("--max-leaves", type=int, default=max(settings.DF_LEAF_GRID))
    df.add_argument("--n-test", type=int, default=settings.SIM_TEST_ROWS)

    for experiment in (alpha, k_sweep, df):
        experiment.add_argument("--reps", type=int, default=settings.SERIES_REPLICATES)
        experiment.add_argument("--out", required=True)
    for experiment in (alpha, k_sweep):
        experiment.add_argument("--replicates-out", default=None, help="per-replicate losses CSV")
    return parser
