"""
Generalización apilada y su combinación con el AG wrapper (Stacked-GA).

Flujo de entrenamiento:
1. Entrenar cada aprendiz de primer nivel h_t = L_t(D).
2. Generar D' con z_it = salida de h_t sobre X_i (resustitución) o de un
   modelo que no vio el fold de X_i (fuera-de-fold).
3. Entrenar el meta-aprendiz h' = L(D').
"""
import logging

import numpy as np

from core.exceptions import ArgumentError, TrainingError
from core.parallel import ordered_map
from core.seeds import derive_seed
from dataset.domain import Dataset, continuous_specs
from dataset.services import apply_mask, fold_assignment
from ga_wrapper.services import penalized, run_ga
from learners.services import cross_val_accuracies, default_spec, fit
from .domain import MetaDataset, StackedModel, StackSpec

logger = logging.getLogger(__name__)

# Orden de las filas en los reportes (rf, knn, mlp, cart, nb, lr, svm)
DEFAULT_ROSTER = ('random_forest', 'knn', 'mlp', 'cart', 'naive_bayes', 'logistic_regression', 'linear_svm')


def default_stack_spec(seed=0, meta_mode='oof:5', hard_labels=False):
    """Una especificación por familia + regresión logística como meta-aprendiz."""
    first_level = [default_spec(family, derive_seed(seed, 'stack', family)) for family in DEFAULT_ROSTER]
    meta = default_spec('logistic_regression', derive_seed(seed, 'stack', 'meta'))
    return StackSpec(first_level, meta, meta_mode=meta_mode, hard_labels=hard_labels,
                     seed=derive_seed(seed, 'stack', 'folds'))


# ============================================================================
# ENTRENAMIENTO
# ============================================================================
def _fit_first_level(spec, index, train):
    learner = spec.first_level[index]
    try:
        return fit(learner, train)
    except TrainingError as exc:
        raise TrainingError(
            f"aprendiz de primer nivel {index} ({learner.family}): {exc.message}",
            stage='first_level', learner_index=index,
        ) from exc


def _outputs(spec, model, X):
    scores = model.score_many(X)
    return (scores >= 0.5).astype(float) if spec.hard_labels else scores


def build_meta(spec, train, threads=1):
    """
    Aprendices de primer nivel entrenados sobre todo `train` y el conjunto D'.

    En modo oof:k cada z_it sale de un modelo entrenado sin el fold de X_i;
    luego h_t se reentrena con todo `train` para inferencia.

    Returns:
        tuple: (lista de T TrainedModel, MetaDataset m x T)
    """
    indices = range(spec.T)
    models = ordered_map(lambda t: _fit_first_level(spec, t, train), indices, threads)
    X = train.features

    if spec.oof_folds is None:
        columns = [_outputs(spec, model, X) for model in models]
    else:
        try:
            folds = fold_assignment(train, spec.oof_folds, stratified=True, seed=spec.seed)
        except ArgumentError as exc:
            raise TrainingError(f"D' fuera-de-fold: {exc.message}", stage='meta') from exc

        def out_of_fold(t):
            column = np.empty(train.m)
            for fold in range(spec.oof_folds):
                held_out = np.flatnonzero(folds == fold)
                inner = _fit_first_level(spec, t, train.subset(np.flatnonzero(folds != fold), role='train'))
                column[held_out] = _outputs(spec, inner, X[held_out])
            return column

        columns = ordered_map(out_of_fold, indices, threads)

    meta = MetaDataset(z=np.column_stack(columns), y=np.array(train.labels))
    logger.debug(f"D' generado ({spec.meta_mode}): {meta.shape[0]}x{meta.shape[1]}")
    return models, meta


def fit_stack(spec, train, threads=1):
    """Entrena el ensamble completo sobre `train`."""
    models, meta = build_meta(spec, train, threads=threads)
    meta_train = Dataset(meta.z, meta.y, continuous_specs(spec.T), role='train')
    try:
        meta_model = fit(spec.meta_learner, meta_train)
    except TrainingError as exc:
        raise TrainingError(f"meta-aprendiz ({spec.meta_learner.family}): {exc.message}", stage='meta') from exc
    return StackedModel(models, meta_model, spec)


def predict_stack(model, x):
    """
    (etiqueta, puntaje) de H(x) = h'(h_1(x), ..., h_T(x)).
    """
    score = float(model.score_many(x)[0])
    return int(score >= 0.5), score


# ============================================================================
# STACKED-GA
# ============================================================================
class StackFitness:
    """Aptitud de una máscara: CV interna del ensamble completo sobre columnas enmascaradas."""

    def __init__(self, spec, train, folds, seed, alpha=0.0):
        self.spec = spec
        self.train = train
        self.folds = folds
        self.seed = seed
        self.alpha = alpha

    def __call__(self, mask):
        masked = apply_mask(self.train, mask)
        accuracies, failed = cross_val_accuracies(
            lambda fold_train: fit_stack(self.spec, fold_train), masked, self.folds, self.seed,
        )
        return penalized(accuracies, failed, mask.popcount, mask.n, self.alpha)


def stacked_ga(spec, config, train, threads=1):
    """
    AG sobre una única máscara compartida por todos los aprendices; el
    ensamble final se entrena con todo `train` restringido a la mejor máscara.

    Returns:
        tuple: (GAResult, StackedModel con n_in = bits activos de la máscara)
    """
    logger.info(f"Stacked-GA: T={spec.T}, meta={spec.meta_learner.family}, n={train.n}")
    evaluator = StackFitness(spec, train, config.fitness_folds, config.seed, config.alpha)
    result = run_ga(config, evaluator, train.n, threads=threads)
    model = fit_stack(spec, apply_mask(train, result.best_mask), threads=threads)
    return result, model
