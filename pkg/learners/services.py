"""
Entrenamiento, predicción y evaluación de clasificadores base.

La evaluación sigue siempre el mismo camino: partir, ajustar el scaler con
la partición de entrenamiento, entrenar, verificar que nadie leyó las
etiquetas de prueba, puntuar y solo entonces comparar con las etiquetas.
"""
import logging
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from core.exceptions import ArgumentError, TrainingError
from dataset.audit import LABEL_AUDIT
from dataset.domain import SplitPlan
from dataset.services import scale_pair, split
from metrics.domain import MetricReport
from metrics.services import average_reports, report
from .classifiers import ESTIMATORS
from .domain import ClassifierSpec, TrainedModel, resolve_family

logger = logging.getLogger(__name__)


# ============================================================================
# FIT / PREDICT / SCORE
# ============================================================================
def default_spec(family, seed=0):
    """Especificación con los hiperparámetros por defecto de la familia."""
    return ClassifierSpec(resolve_family(family), (), seed)


def fit(spec, train, threads=1):
    """
    Entrena `spec` sobre un Dataset (features ya escaladas si corresponde).

    Raises:
        ArgumentError: valores no finitos en las características
        TrainingError: datos de una sola clase para familias discriminativas
    """
    X = train.features
    if not np.isfinite(X).all():
        raise ArgumentError(f"{spec.family}: las características contienen valores no finitos")
    estimator = ESTIMATORS[spec.family](spec.params, seed=spec.seed, threads=threads)
    try:
        estimator.fit(X, train.labels)
    except TrainingError:
        raise
    except (FloatingPointError, np.linalg.LinAlgError) as exc:
        raise TrainingError(f"{spec.family}: {exc}", stage='fit') from exc
    return TrainedModel(spec, estimator, train.n)


def fitter(spec, threads=1):
    """Función train -> TrainedModel para los arneses de evaluación."""
    return partial(fit, spec, threads=threads)


def predict(model, x):
    return model.predict(x)


def score(model, x):
    return model.score(x)


# ============================================================================
# EVALUACIÓN
# ============================================================================
@dataclass
class Evaluation:
    """Resultado de una evaluación: reporte final + reportes por fold."""
    report: MetricReport
    fold_reports: list = field(default_factory=list)
    skipped: dict = field(default_factory=dict)
    plan: SplitPlan = None


def evaluate_partition_with(fit_fn, train, test):
    """
    Evalúa un único par (train, test).

    `fit_fn` recibe la partición de entrenamiento ya escalada y devuelve un
    objeto con `score_many`. Las etiquetas de `test` se leen solo después de
    predecir.
    """
    train_scaled, test_scaled = scale_pair(train, test)
    model = fit_fn(train_scaled)
    LABEL_AUDIT.assert_unread(test_scaled)
    scores = model.score_many(test_scaled.features)
    result = report(test_scaled.labels, scores)
    LABEL_AUDIT.release(test_scaled)
    return result


def evaluate_partition(spec, train, test, threads=1):
    return evaluate_partition_with(fitter(spec, threads), train, test)


def evaluate_with(fit_fn, ds, plan):
    """
    Evalúa `fit_fn` según un SplitPlan. En k-fold promedia los reportes
    por fold omitiendo las métricas indefinidas.
    """
    fold_reports = [evaluate_partition_with(fit_fn, train, test) for train, test in split(ds, plan)]
    if len(fold_reports) == 1:
        return Evaluation(fold_reports[0], fold_reports, {}, plan)
    averaged, skipped = average_reports(fold_reports)
    return Evaluation(averaged, fold_reports, skipped, plan)


def evaluate(spec, ds, plan, threads=1):
    """
    MetricReport de `spec` sobre `ds` con el plan dado (holdout o k-fold).
    """
    logger.info(f"Evaluando {spec.family} con {plan.label} (seed={plan.seed})")
    evaluation = evaluate_with(fitter(spec, threads), ds, plan)
    logger.info(f"{spec.family} {plan.label}: accuracy={evaluation.report.accuracy:.4f}")
    return evaluation.report


def cross_val_accuracies(fit_fn, ds, folds, seed):
    """
    Exactitud por fold de una validación cruzada estratificada.

    Un fold cuyo entrenamiento falla aporta exactitud 0 y queda marcado.

    Returns:
        tuple: (lista de exactitudes, cantidad de folds fallidos)
    """
    accuracies, failed = [], 0
    for index, (train, test) in enumerate(split(ds, SplitPlan.kfold(folds, seed=seed))):
        try:
            accuracies.append(evaluate_partition_with(fit_fn, train, test).accuracy)
        except TrainingError as exc:
            logger.warning(f"Fold {index} falló al entrenar: {exc.message}")
            accuracies.append(0.0)
            failed += 1
    return accuracies, failed
