"""
Gradient boosting and random forests over CART or LOO-selected trees
"""
from .model import EnsembleModel, EnsembleKind, GbLoss
from .boosting import GbConfig, fit_gradient_boosting
from .forest import RfConfig, fit_random_forest, bootstrap_sample
from .importance import FeatureImportance, ImportanceReport, oob_permutation_importance
from .serialization import ensemble_to_document, ensemble_from_document, dumps_ensemble, save_model, load_model
from .exceptions import EnsembleError, EnsembleConfigError

__all__ = ['EnsembleModel', 'EnsembleKind', 'GbLoss', 'GbConfig', 'fit_gradient_boosting', 'RfConfig',
           'fit_random_forest', 'bootstrap_sample', 'FeatureImportance', 'ImportanceReport',
           'oob_permutation_importance', 'ensemble_to_document', 'ensemble_from_document', 'dumps_ensemble',
           'save_model', 'load_model', 'EnsembleError', 'EnsembleConfigError']
