import numpy as np

from .base import Estimator, require_positive


class GaussianNaiveBayes(Estimator):
    """
    Naive Bayes gaussiano.

    Suavizado de varianza: ε = var_smoothing · (máxima varianza de las columnas).
    Con una sola clase en entrenamiento el modelo predice siempre esa clase.
    """

    def __init__(self, params, seed=0, threads=1):
        super().__init__(params, seed, threads)
        require_positive(params, 'var_smoothing')

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        max_var = float(X.var(axis=0).max()) if X.shape[0] > 1 else 0.0
        epsilon = self.params['var_smoothing'] * (max_var if max_var > 0 else 1.0)

        self.classes_ = np.unique(y)
        self.log_priors_ = np.log(np.array([np.mean(y == c) for c in self.classes_]))
        self.means_ = np.array([X[y == c].mean(axis=0) for c in self.classes_])
        self.vars_ = np.array([X[y == c].var(axis=0) for c in self.classes_]) + epsilon
        return self

    def _joint_log_likelihood(self, X):
        jll = []
        for prior, mean, var in zip(self.log_priors_, self.means_, self.vars_):
            log_density = -0.5 * np.sum(np.log(2.0 * np.pi * var) + (X - mean) ** 2 / var, axis=1)
            jll.append(prior + log_density)
        return np.column_stack(jll)

    def predict_scores(self, X):
        if self.classes_.size == 1:
            return np.full(X.shape[0], float(self.classes_[0]))
        jll = self._joint_log_likelihood(X)
        # P(clase 1 | x) = 1 / (1 + exp(jll0 - jll1))
        diff = np.clip(jll[:, 0] - jll[:, 1], -700.0, 700.0)
        return 1.0 / (1.0 + np.exp(diff))
