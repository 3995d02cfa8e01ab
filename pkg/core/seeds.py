"""
Derivación determinista de semillas y generadores aleatorios.

Cada flujo aleatorio del proyecto se identifica con una tupla de claves
(semilla maestra, etapa, índices...). El mismo identificador produce siempre
el mismo flujo, sin importar el orden en que los workers lo consuman.
"""
import hashlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def derive_seed(master_seed, *labels):
    """
    Semilla de 64 bits derivada de la semilla maestra y una ruta de etiquetas.

    Ejemplo:
        derive_seed(42, 'ga', 'fold', 3)
    """
    key = ':'.join(str(part) for part in (int(master_seed) & SEED_MASK, *labels))
    digest = hashlib.sha256(key.encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')


def rng_for(seed, *keys):
    """Generador numpy para el flujo (seed, *keys). Las claves deben ser enteros ≥ 0."""
    return np.random.default_rng([int(seed) & SEED_MASK, *(int(k) for k in keys)])
