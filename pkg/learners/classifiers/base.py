"""
Piezas comunes de los clasificadores: interfaz, sigmoide estable y
gradiente numérico para verificar las derivadas analíticas.
"""
import numpy as np

from core.exceptions import ArgumentError


def sigmoid(z):
    """Sigmoide numéricamente estable."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    exp_z = np.exp(z[~positive])
    out[~positive] = exp_z / (1.0 + exp_z)
    return out


def log_loss_from_logits(z, y):
    """Entropía cruzada media calculada desde los logits."""
    return float(np.mean(np.logaddexp(0.0, z) - y * z))


def numerical_gradient(loss_fn, theta, eps=1e-6):
    """Diferencias centrales de `loss_fn` alrededor de `theta`."""
    theta = np.array(theta, dtype=float)
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = eps
        grad[i] = (loss_fn(theta + step) - loss_fn(theta - step)) / (2 * eps)
    return grad


def require_positive(params, *names, integer=False):
    for name in names:
        value = params[name]
        valid_type = isinstance(value, int) if integer else isinstance(value, (int, float))
        if isinstance(value, bool) or not valid_type or value <= 0:
            kind = 'entero' if integer else 'número'
            raise ArgumentError(f"'{name}' debe ser un {kind} positivo, recibido {value!r}")


class Estimator:
    """
    Interfaz mínima: fit(X, y) y predict_scores(X) -> confianza de la clase 1 en [0, 1].
    """

    def __init__(self, params, seed=0, threads=1):
        self.params = params
        self.seed = seed
        self.threads = threads

    def fit(self, X, y):
        raise NotImplementedError

    def predict_scores(self, X):
        raise NotImplementedError
