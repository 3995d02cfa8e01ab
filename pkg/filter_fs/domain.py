"""
Resultados de los filtros de selección (Relief y FCBF).
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class FeatureWeights:
    """
    Relevancia por característica.

    relief: pesos en [-1, 1]; fcbf: SU(característica, clase) en [0, 1].
    """
    weights: np.ndarray
    method: str
    elapsed_ms: float


@dataclass(frozen=True, eq=False)
class FilterResult:
    """
    Máscara de características retenidas y orden de relevancia.

    `ordering` lista primero las seleccionadas y luego las rechazadas, cada
    grupo por relevancia decreciente. `warning` indica que el filtro tuvo que
    degradar algún parámetro (p. ej. k de Relief).
    """
    mask: object
    weights: FeatureWeights
    ordering: tuple
    warning: str = None

    @property
    def method(self):
        return self.weights.method

    @property
    def elapsed_ms(self):
        return self.weights.elapsed_ms

    @property
    def selected(self):
        return self.mask.indices

    def to_dict(self):
        return {
            'method': self.method,
            'selected': self.selected,
            'weights': [float(w) for w in self.weights.weights],
            'elapsed_ms': float(self.elapsed_ms),
            'ordering': list(self.ordering),
            'warning': self.warning,
        }


@dataclass(frozen=True)
class FilterEvaluation:
    """Filtro sobre el dataset completo + exactitud del clasificador evaluador."""
    result: FilterResult
    report: object
    scorer: object
    plan: object
