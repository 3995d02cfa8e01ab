"""
Tipos del ensamble apilado: especificación, conjunto de meta-características
y modelo entrenado H(x) = h'(h_1(x), ..., h_T(x)).
"""
import re
from dataclasses import dataclass

import numpy as np

from core.exceptions import ArgumentError

META_MODE_PATTERN = re.compile(r'^(?:(resub|resubstitution)|(?:oof|out_of_fold):(\d+))$')


def parse_meta_mode(value):
    """
    'resub' | 'resubstitution' -> ('resub', None); 'oof:k' | 'out_of_fold:k' -> ('oof', k).
    """
    match = META_MODE_PATTERN.match(str(value).strip().lower())
    if not match:
        raise ArgumentError(f"meta_mode inválido: {value!r} (use 'resub' u 'oof:k')")
    if match.group(1):
        return 'resub', None
    k = int(match.group(2))
    if k < 2:
        raise ArgumentError(f"oof necesita k ≥ 2, recibido {k}")
    return 'oof', k


@dataclass(frozen=True)
class StackSpec:
    """
    Primer nivel L_1..L_T (ordenado), meta-aprendiz L y modo de generación
    de meta-características. `seed` fija la asignación de folds en modo oof.
    """
    first_level: tuple
    meta_learner: object
    meta_mode: str = 'oof:5'
    hard_labels: bool = False
    seed: int = 0

    def __post_init__(self):
        first_level = tuple(self.first_level)
        if not first_level:
            raise ArgumentError("el ensamble necesita al menos un aprendiz de primer nivel")
        if len(set(first_level)) != len(first_level):
            raise ArgumentError("los aprendices de primer nivel deben ser distintos")
        mode, k = parse_meta_mode(self.meta_mode)
        object.__setattr__(self, 'first_level', first_level)
        object.__setattr__(self, 'meta_mode', 'resub' if mode == 'resub' else f'oof:{k}')

    @property
    def T(self):
        return len(self.first_level)

    @property
    def oof_folds(self):
        """k del modo fuera-de-fold, o None en resustitución."""
        return parse_meta_mode(self.meta_mode)[1]

    def to_dict(self):
        return {
            'first_level': [spec.to_dict() for spec in self.first_level],
            'meta_learner': self.meta_learner.to_dict(),
            'meta_mode': self.meta_mode,
            'hard_labels': self.hard_labels,
            'seed': self.seed,
        }


@dataclass(frozen=True, eq=False)
class MetaDataset:
    """z: m x T (columna t = salidas del aprendiz t); y: etiquetas de entrenamiento."""
    z: np.ndarray
    y: np.ndarray

    @property
    def shape(self):
        return self.z.shape


class StackedModel:
    """Ensamble entrenado; inmutable y seguro para predicción concurrente."""

    __slots__ = ('first_level_models', 'meta_model', 'spec')

    def __init__(self, first_level_models, meta_model, spec):
        if meta_model.n_in != len(first_level_models):
            raise ArgumentError(
                f"el meta-modelo espera {meta_model.n_in} entradas y hay {len(first_level_models)} aprendices"
            )
        self.first_level_models = tuple(first_level_models)
        self.meta_model = meta_model
        self.spec = spec

    @property
    def n_in(self):
        return self.first_level_models[0].n_in

    def meta_features(self, X):
        """Fila de longitud T por registro: puntajes (o etiquetas) de h_1..h_T."""
        z = np.column_stack([model.score_many(X) for model in self.first_level_models])
        if self.spec.hard_labels:
            z = (z >= 0.5).astype(float)
        return z

    def score_many(self, X):
        return self.meta_model.score_many(self.meta_features(X))

    def predict_many(self, X):
        return (self.score_many(X) >= 0.5).astype(np.int64)

    def __repr__(self):
        families = ', '.join(m.spec.short_name for m in self.first_level_models)
        return f"StackedModel([{families}] -> {self.meta_model.spec.short_name})"
