"""
Construcción de la matriz de confusión y métricas escalares (exactitud,
sensibilidad, especificidad, VPP, VPN, F1, índice de Youden y AUC).
"""
import logging

import numpy as np

from core.exceptions import ArgumentError
from .domain import METRIC_NAMES, ConfusionMatrix, MetricReport

logger = logging.getLogger(__name__)

THRESHOLD = 0.5


def _binary_vector(values, name):
    array = np.asarray(values).reshape(-1)
    if array.size and not np.isin(array, (0, 1)).all():
        raise ArgumentError(f"{name} debe contener solo 0 y 1")
    return array.astype(np.int64)


def confusion(y_true, y_pred):
    """
    Tabula TP/FP/TN/FN con positivo = 1.
    """
    y_true = _binary_vector(y_true, 'y_true')
    y_pred = _binary_vector(y_pred, 'y_pred')
    if y_true.shape != y_pred.shape:
        raise ArgumentError(f"longitudes distintas: {y_true.size} vs {y_pred.size}")
    if y_true.size < 1:
        raise ArgumentError("se necesita al menos un registro")
    return ConfusionMatrix(
        tp=int(np.sum((y_pred == 1) & (y_true == 1))),
        fp=int(np.sum((y_pred == 1) & (y_true == 0))),
        tn=int(np.sum((y_pred == 0) & (y_true == 0))),
        fn=int(np.sum((y_pred == 0) & (y_true == 1))),
    )


def _ratio(numerator, denominator):
    return numerator / denominator if denominator else None


def accuracy(cm):
    return (cm.tp + cm.tn) / cm.total


def sensitivity(cm):
    return _ratio(cm.tp, cm.tp + cm.fn)


def specificity(cm):
    return _ratio(cm.tn, cm.tn + cm.fp)


def ppv(cm):
    return _ratio(cm.tp, cm.tp + cm.fp)


def npv(cm):
    return _ratio(cm.tn, cm.tn + cm.fn)


def f1(cm):
    return _ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn)


def youden(cm):
    sen, spe = sensitivity(cm), specificity(cm)
    if sen is None or spe is None:
        return None
    return sen + spe - 1.0


def auc(y_true, scores):
    """
    Probabilidad de que un positivo aleatorio puntúe más que un negativo
    aleatorio; los empates valen 0.5 (formulación de Mann–Whitney).

    Returns:
        float o None si y_true tiene una sola clase
    """
    y_true = _binary_vector(y_true, 'y_true')
    scores = np.asarray(scores, dtype=float).reshape(-1)
    if y_true.shape != scores.shape:
        raise ArgumentError(f"longitudes distintas: {y_true.size} vs {scores.size}")
    positives = scores[y_true == 1]
    negatives = scores[y_true == 0]
    if positives.size == 0 or negatives.size == 0:
        return None
    diff = positives[:, None] - negatives[None, :]
    wins = np.count_nonzero(diff > 0) + 0.5 * np.count_nonzero(diff == 0)
    return float(wins / diff.size)


def report_from_confusion(cm, auc_value=None):
    return MetricReport(
        accuracy=accuracy(cm),
        sensitivity=sensitivity(cm),
        specificity=specificity(cm),
        ppv=ppv(cm),
        npv=npv(cm),
        f1=f1(cm),
        youden=youden(cm),
        auc=auc_value,
    )


def report(y_true, scores, threshold=THRESHOLD):
    """MetricReport completo a partir de puntajes (etiqueta = puntaje ≥ umbral)."""
    scores = np.asarray(scores, dtype=float)
    y_pred = (scores >= threshold).astype(np.int64)
    return report_from_confusion(confusion(y_true, y_pred), auc(y_true, scores))


def average_reports(reports):
    """
    Promedio por métrica entre folds, omitiendo los valores indefinidos.

    Returns:
        tuple: (MetricReport promedio, dict con cuántos folds se omitieron por métrica)
    """
    reports = list(reports)
    if not reports:
        raise ArgumentError("no hay reportes para promediar")
    averaged, skipped = {}, {}
    for name in METRIC_NAMES:
        values = [getattr(r, name) for r in reports if getattr(r, name) is not None]
        skipped[name] = len(reports) - len(values)
        averaged[name] = float(np.mean(values)) if values else None
    omitted = {k: v for k, v in skipped.items() if v}
    if omitted:
        logger.warning(f"Métricas indefinidas omitidas al promediar: {omitted}")
    return MetricReport(**averaged), skipped
