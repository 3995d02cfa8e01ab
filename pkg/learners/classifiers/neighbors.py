import numpy as np

from .base import Estimator, require_positive


class KNearestNeighbors(Estimator):
    """
    k vecinos más cercanos con distancia euclídea.

    Empates de distancia -> menor índice de registro (orden estable).
    Puntaje = fracción de vecinos con etiqueta 1; un empate de votos queda
    apenas por debajo de 0.5 y se resuelve hacia la clase 0.
    """

    def __init__(self, params, seed=0, threads=1):
        super().__init__(params, seed, threads)
        require_positive(params, 'k', integer=True)

    def fit(self, X, y):
        self.X_ = np.array(X, dtype=float)
        self.y_ = np.array(y, dtype=float)
        return self

    def predict_scores(self, X):
        k = min(self.params['k'], self.X_.shape[0])
        distances = ((X[:, None, :] - self.X_[None, :, :]) ** 2).sum(axis=2)
        nearest = np.argsort(distances, axis=1, kind='stable')[:, :k]
        scores = self.y_[nearest].mean(axis=1)
        return np.where(scores == 0.5, np.nextafter(0.5, 0.0), scores)
