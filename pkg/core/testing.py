"""
Datos sintéticos compartidos por las pruebas de todas las apps.
"""
from pathlib import Path

import numpy as np
from django.conf import settings

from dataset.domain import Dataset, continuous_specs


def statlog_path():
    """Ruta configurada de heart.dat, o None si el archivo no está disponible."""
    path = Path(settings.STACKGA['STATLOG_PATH'])
    return path if path.is_file() else None


def statlog_like_text(m=40, seed=0):
    """
    Texto con el formato heart.dat (13 atributos + clase {1, 2}) y una
    relación simple entre `thal`/`ca` y la clase.
    """
    rng = np.random.default_rng(seed)
    lines = []
    for i in range(m):
        sick = i % 2
        row = [
            rng.integers(29, 78),                 # age
            rng.integers(0, 2),                   # sex
            rng.integers(1, 5),                   # chest pain
            rng.integers(94, 201),                # blood pressure
            rng.integers(126, 565),               # cholesterol
            rng.integers(0, 2),                   # blood sugar
            rng.integers(0, 3),                   # electrocardiographic
            rng.integers(71, 203),                # heart rate
            rng.integers(0, 2),                   # exercise-induced angina
            round(float(rng.uniform(0, 6.2)), 1),  # ST depression
            rng.integers(1, 4),                   # slope
            rng.integers(1, 4) if sick else 0,    # ca
            7 if sick else 3,                     # thal
            2 if sick else 1,
        ]
        lines.append(' '.join(str(v) for v in row))
    return '\n'.join(lines) + '\n'


def informative_dataset(m=200, n=5, seed=0, noise=0.1):
    """
    Columna 0 = etiqueta + Uniform(-noise, noise); el resto, ruido puro.
    """
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 2, size=m)
    X = rng.uniform(0.0, 1.0, size=(m, n))
    X[:, 0] = y + rng.uniform(-noise, noise, size=m)
    return Dataset(X, y, continuous_specs(n))


def two_informative_dataset(m=120, n=10, seed=0):
    """
    10 columnas; la etiqueta depende solo de las columnas 0 y 1 (x0 + x1 > 1).
    """
    rng = np.random.default_rng(seed)
    X = rng.uniform(0.0, 1.0, size=(m, n))
    y = (X[:, 0] + X[:, 1] > 1.0).astype(int)
    return Dataset(X, y, continuous_specs(n))


def toy_dataset(m=40, n=4, seed=0):
    """Dataset pequeño para búsquedas exhaustivas (n = 4 -> 15 máscaras)."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(m, n))
    y = (X[:, 0] - 0.5 * X[:, 1] + 0.3 * rng.normal(size=m) > 0).astype(int)
    return Dataset(X, y, continuous_specs(n))


def xor_dataset():
    return Dataset([[0, 0], [0, 1], [1, 0], [1, 1]], [0, 1, 1, 0], continuous_specs(2))
