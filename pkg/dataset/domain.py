"""
Tipos del módulo de datos: especificación de características, dataset
inmutable, máscara de características y plan de partición.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.exceptions import ArgumentError
from .audit import LABEL_AUDIT


class FeatureKind(str, Enum):
    CONTINUOUS = 'continuous'
    BINARY = 'binary'
    ORDINAL = 'ordinal'
    NOMINAL = 'nominal'

    @property
    def is_discrete(self):
        """Binarias y nominales se comparan por igualdad (Relief, escalado)."""
        return self in (FeatureKind.BINARY, FeatureKind.NOMINAL)


@dataclass(frozen=True)
class FeatureSpec:
    """
    Metadato de una columna.

    `index` es la posición en el archivo original (0..12 para Statlog) y se
    conserva al enmascarar, así los reportes siempre nombran la columna real.
    """
    name: str
    kind: FeatureKind
    index: int


# ============================================================================
# CARACTERÍSTICAS DEL DATASET STATLOG HEART (13 variables)
# ============================================================================
STATLOG_FEATURES = (
    FeatureSpec('age', FeatureKind.CONTINUOUS, 0),
    FeatureSpec('sex', FeatureKind.BINARY, 1),
    FeatureSpec('chest pain', FeatureKind.NOMINAL, 2),
    FeatureSpec('blood pressure', FeatureKind.CONTINUOUS, 3),
    FeatureSpec('cholesterol', FeatureKind.CONTINUOUS, 4),
    FeatureSpec('blood sugar', FeatureKind.BINARY, 5),
    FeatureSpec('electrocardiographic', FeatureKind.NOMINAL, 6),
    FeatureSpec('heart rate', FeatureKind.CONTINUOUS, 7),
    FeatureSpec('exercise-induced angina', FeatureKind.BINARY, 8),
    FeatureSpec('ST depression', FeatureKind.CONTINUOUS, 9),
    FeatureSpec('slope', FeatureKind.ORDINAL, 10),
    FeatureSpec('ca', FeatureKind.ORDINAL, 11),
    FeatureSpec('thal', FeatureKind.NOMINAL, 12),
)


def continuous_specs(n):
    """Especificaciones genéricas f0..f{n-1} (datos sintéticos)."""
    return tuple(FeatureSpec(f'f{i}', FeatureKind.CONTINUOUS, i) for i in range(n))


_PARTITION_IDS = itertools.count(1)


# ============================================================================
# DATASET - Matriz m x n inmutable con etiquetas binarias
# ============================================================================
class Dataset:
    """
    Dataset inmutable (0 = ausencia, 1 = presencia de enfermedad).

    Las lecturas de `labels` quedan registradas por partición en LABEL_AUDIT;
    las operaciones estructurales (subconjunto, escalado, máscara) copian las
    etiquetas sin contarlas como lectura.

    Campos:
        - features: matriz float m x n (solo lectura)
        - specs: tupla de FeatureSpec, una por columna
        - role: 'full', 'train' o 'test'
        - partition_id: identidad de los registros; escalar o enmascarar la conserva
    """

    __slots__ = ('features', '_labels', 'specs', 'role', 'partition_id')

    def __init__(self, features, labels, specs=None, role='full', partition_id=None):
        X = np.array(features, dtype=float, copy=True)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        y = np.array(labels, copy=True).reshape(-1)

        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ArgumentError(f"la matriz debe ser m x n con m, n ≥ 1 (recibido {X.shape})")
        if y.shape[0] != X.shape[0]:
            raise ArgumentError(f"{X.shape[0]} filas pero {y.shape[0]} etiquetas")
        if not np.isin(y, (0, 1)).all():
            raise ArgumentError("las etiquetas deben estar en {0, 1}")
        specs = tuple(specs) if specs is not None else continuous_specs(X.shape[1])
        if len(specs) != X.shape[1]:
            raise ArgumentError(f"{X.shape[1]} columnas pero {len(specs)} especificaciones")

        y = y.astype(np.int64)
        X.setflags(write=False)
        y.setflags(write=False)
        self.features = X
        self._labels = y
        self.specs = specs
        self.role = role
        self.partition_id = partition_id if partition_id is not None else next(_PARTITION_IDS)

    @property
    def m(self):
        return self.features.shape[0]

    @property
    def n(self):
        return self.features.shape[1]

    @property
    def labels(self):
        """Etiquetas; cada acceso queda auditado."""
        LABEL_AUDIT.record(self)
        return self._labels

    @property
    def feature_names(self):
        return [spec.name for spec in self.specs]

    def class_counts(self):
        """Conteo (negativos, positivos) sin auditar: no expone etiquetas individuales."""
        positives = int(self._labels.sum())
        return self.m - positives, positives

    def subset(self, indices, role=None):
        """Nuevo dataset con las filas `indices` (nueva partición)."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[indices], self._labels[indices], self.specs,
                       role=role or self.role)

    def with_features(self, features, specs=None):
        """Misma partición y etiquetas con otra matriz de características."""
        return Dataset(features, self._labels, specs if specs is not None else self.specs,
                       role=self.role, partition_id=self.partition_id)

    def __repr__(self):
        return f"Dataset(m={self.m}, n={self.n}, role={self.role!r})"


# ============================================================================
# FEATURE MASK - Cromosoma del algoritmo genético
# ============================================================================
@dataclass(frozen=True)
class FeatureMask:
    """Vector de bits de longitud n con al menos un bit activo."""
    bits: tuple

    def __post_init__(self):
        bits = tuple(bool(b) for b in self.bits)
        if not bits:
            raise ArgumentError("la máscara no puede tener longitud 0")
        if not any(bits):
            raise ArgumentError("la máscara no selecciona ninguna característica")
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def full(cls, n):
        return cls((True,) * n)

    @classmethod
    def from_indices(cls, indices, n):
        chosen = set(int(i) for i in indices)
        if any(i < 0 or i >= n for i in chosen):
            raise ArgumentError(f"índices fuera de rango para n = {n}: {sorted(chosen)}")
        return cls(tuple(i in chosen for i in range(n)))

    @classmethod
    def from_array(cls, array):
        return cls(tuple(bool(b) for b in np.asarray(array).reshape(-1)))

    @property
    def n(self):
        return len(self.bits)

    @property
    def indices(self):
        return [i for i, bit in enumerate(self.bits) if bit]

    @property
    def popcount(self):
        return sum(self.bits)

    def as_array(self):
        return np.array(self.bits, dtype=bool)

    def key(self):
        """Clave hashable y ordenable (lexicográfica sobre los bits)."""
        return tuple(int(b) for b in self.bits)

    def __and__(self, other):
        return FeatureMask(tuple(a and b for a, b in zip(self.bits, other.bits)))

    def restrict(self, outer):
        """Bits de esta máscara en las posiciones que selecciona `outer`."""
        if outer.n != self.n:
            raise ArgumentError(f"máscaras de longitud distinta ({self.n} vs {outer.n})")
        return FeatureMask(tuple(self.bits[i] for i in outer.indices))

    def __str__(self):
        return ''.join('1' if b else '0' for b in self.bits)


# ============================================================================
# SPLIT PLAN - Holdout o k-fold
# ============================================================================
@dataclass(frozen=True)
class SplitPlan:
    """
    Plan de partición: holdout(fraction) o kfold(k), estratificado por defecto.
    """
    kind: str
    fraction: float = 0.75
    k: int = 10
    stratified: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ('holdout', 'kfold'):
            raise ArgumentError(f"tipo de partición desconocido: {self.kind!r}")
        if self.kind == 'holdout' and not 0.0 < self.fraction < 1.0:
            raise ArgumentError(f"la fracción debe estar en (0, 1), recibido {self.fraction}")
        if self.kind == 'kfold' and self.k < 2:
            raise ArgumentError(f"k debe ser ≥ 2, recibido {self.k}")

    @classmethod
    def holdout(cls, fraction=0.75, seed=0, stratified=True):
        return cls('holdout', fraction=fraction, stratified=stratified, seed=seed)

    @classmethod
    def kfold(cls, k=10, seed=0, stratified=True):
        return cls('kfold', k=k, stratified=stratified, seed=seed)

    @property
    def label(self):
        """Nombre corto usado en columnas de reporte: holdout, k2, k5, k10."""
        return 'holdout' if self.kind == 'holdout' else f'k{self.k}'

    def with_seed(self, seed):
        return SplitPlan(self.kind, self.fraction, self.k, self.stratified, seed)


# ============================================================================
# SCALER - Estandarización z-score ajustada solo con entrenamiento
# ============================================================================
@dataclass(frozen=True, eq=False)
class Scaler:
    """
    Medias y desviaciones poblacionales por columna.

    `scaled` marca las columnas que se transforman (continuas y ordinales);
    binarias y nominales pasan sin cambios.
    """
    means: np.ndarray
    stds: np.ndarray
    scaled: np.ndarray

    @property
    def n(self):
        return self.means.shape[0]
