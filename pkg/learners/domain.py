"""
Especificación de clasificadores y modelo entrenado.

Cada familia tiene un conjunto cerrado de hiperparámetros con valores por
defecto; una clave desconocida se rechaza al construir la especificación.
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import ArgumentError

# ============================================================================
# FAMILIAS E HIPERPARÁMETROS POR DEFECTO
# ============================================================================
DEFAULT_HYPERPARAMETERS = {
    'knn': {
        'k': 5,
    },
    'naive_bayes': {
        'var_smoothing': 1e-9,
    },
    'cart': {
        'max_depth': 10,
        'min_samples_leaf': 2,
        'max_features': None,
    },
    'random_forest': {
        'n_trees': 100,
        'max_depth': 10,
        'min_samples_leaf': 2,
        'max_features': 'sqrt',
    },
    'logistic_regression': {
        'learning_rate': 0.1,
        'epochs': 2000,
        'l2': 1e-4,
    },
    'linear_svm': {
        'learning_rate': 0.01,
        'epochs': 2000,
        'l2': 1e-3,
        'batch_size': 32,
    },
    'mlp': {
        'hidden_units': 16,
        'learning_rate': 0.05,
        'epochs': 3000,
        'init_scale': 0.5,
    },
}

FAMILIES = tuple(DEFAULT_HYPERPARAMETERS)

# Familias que necesitan ambas clases para entrenar
DISCRIMINATIVE_FAMILIES = ('logistic_regression', 'linear_svm', 'mlp')

# Nombres cortos usados en las filas de los reportes
SHORT_NAMES = {
    'random_forest': 'rf',
    'knn': 'knn',
    'mlp': 'mlp',
    'cart': 'cart',
    'naive_bayes': 'nb',
    'logistic_regression': 'lr',
    'linear_svm': 'svm',
}

FAMILY_ALIASES = {short: family for family, short in SHORT_NAMES.items()}
FAMILY_ALIASES.update({family: family for family in FAMILIES})
FAMILY_ALIASES['dtree'] = 'cart'


def resolve_family(name):
    """Nombre canónico de una familia a partir de su nombre o alias."""
    try:
        return FAMILY_ALIASES[str(name).lower()]
    except KeyError:
        raise ArgumentError(f"familia de clasificador desconocida: {name!r}") from None


# ============================================================================
# CLASSIFIER SPEC
# ============================================================================
@dataclass(frozen=True)
class ClassifierSpec:
    """
    Familia + hiperparámetros + semilla.

    `hyperparameters` se guarda como tupla ordenada de pares (clave, valor)
    para que la especificación sea inmutable y hashable; `params` devuelve
    el diccionario completo con los valores por defecto aplicados.
    """
    family: str
    hyperparameters: tuple = ()
    seed: int = 0

    def __post_init__(self):
        family = resolve_family(self.family)
        items = self.hyperparameters
        if isinstance(items, dict):
            items = items.items()
        items = tuple(sorted((str(k), v) for k, v in items))
        unknown = sorted(k for k, _ in items if k not in DEFAULT_HYPERPARAMETERS[family])
        if unknown:
            raise ArgumentError(
                f"hiperparámetros desconocidos para {family}: {unknown} "
                f"(permitidos: {sorted(DEFAULT_HYPERPARAMETERS[family])})"
            )
        object.__setattr__(self, 'family', family)
        object.__setattr__(self, 'hyperparameters', items)
        object.__setattr__(self, 'seed', int(self.seed))

    @property
    def params(self):
        return {**DEFAULT_HYPERPARAMETERS[self.family], **dict(self.hyperparameters)}

    @property
    def short_name(self):
        return SHORT_NAMES[self.family]

    def with_seed(self, seed):
        return ClassifierSpec(self.family, self.hyperparameters, seed)

    def to_dict(self):
        return {
            'family': self.family,
            'hyperparameters': dict(self.hyperparameters),
            'seed': self.seed,
        }


# ============================================================================
# TRAINED MODEL
# ============================================================================
class TrainedModel:
    """
    Modelo entrenado inmutable; predict/score validan el ancho de entrada.

    Regla uniforme: etiqueta = 1 si y solo si puntaje ≥ 0.5.
    """

    __slots__ = ('spec', 'estimator', 'n_in')

    def __init__(self, spec, estimator, n_in):
        self.spec = spec
        self.estimator = estimator
        self.n_in = n_in

    def _check_rows(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.shape[1] != self.n_in:
            raise ArgumentError(f"se esperaban {self.n_in} características y llegaron {X.shape[1]}")
        return X

    def score_many(self, X):
        return self.estimator.predict_scores(self._check_rows(X))

    def predict_many(self, X):
        return (self.score_many(X) >= 0.5).astype(np.int64)

    def score(self, x):
        return float(self.score_many(x)[0])

    def predict(self, x):
        return int(self.predict_many(x)[0])

    def __repr__(self):
        return f"TrainedModel({self.spec.family}, n_in={self.n_in})"


class MaskedPredictor:
    """
    Modelo entrenado sobre las columnas de `mask` que acepta filas completas.

    `model` puede ser un TrainedModel o un StackedModel (cualquier objeto con
    score_many).
    """

    __slots__ = ('mask', 'model')

    def __init__(self, mask, model):
        self.mask = mask
        self.model = model

    @property
    def n_in(self):
        return self.mask.n

    def score_many(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.shape[1] != self.mask.n:
            raise ArgumentError(f"se esperaban {self.mask.n} características y llegaron {X.shape[1]}")
        return self.model.score_many(X[:, self.mask.indices])

    def predict_many(self, X):
        return (self.score_many(X) >= 0.5).astype(np.int64)

    def score(self, x):
        return float(self.score_many(x)[0])

    def predict(self, x):
        return int(self.predict_many(x)[0])
