"""
Modelos lineales: regresión logística (descenso de gradiente completo) y
SVM lineal (descenso estocástico sobre la pérdida hinge).
"""
import numpy as np

from core.exceptions import ArgumentError, TrainingError
from core.seeds import rng_for
from .base import Estimator, log_loss_from_logits, require_positive, sigmoid


def require_both_classes(y, family):
    if np.unique(y).size < 2:
        raise TrainingError(f"{family} necesita ambas clases en los datos de entrenamiento", stage='fit')


class LogisticRegression(Estimator):
    """
    Regresión logística con regularización L2 sobre los pesos (el sesgo no
    se regulariza). Pesos iniciales en cero.

    Parámetros planos: theta = [w_1 .. w_n, b].
    """

    def __init__(self, params, seed=0, threads=1):
        super().__init__(params, seed, threads)
        require_positive(params, 'learning_rate')
        require_positive(params, 'epochs', integer=True)
        if not isinstance(params['l2'], (int, float)) or params['l2'] < 0:
            raise ArgumentError(f"'l2' debe ser ≥ 0, recibido {params['l2']!r}")

    @staticmethod
    def unpack(theta):
        return theta[:-1], theta[-1]

    @staticmethod
    def pack(weights, bias):
        return np.concatenate([weights, [bias]])

    def loss(self, theta, X, y):
        return self.loss_and_gradient(theta, X, y)[0]

    def loss_and_gradient(self, theta, X, y):
        weights, bias = self.unpack(np.asarray(theta, dtype=float))
        z = X @ weights + bias
        l2 = self.params['l2']
        loss = log_loss_from_logits(z, y) + 0.5 * l2 * float(weights @ weights)
        residual = (sigmoid(z) - y) / y.shape[0]
        grad = self.pack(X.T @ residual + l2 * weights, residual.sum())
        return loss, grad

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        require_both_classes(y, 'logistic_regression')
        theta = np.zeros(X.shape[1] + 1)
        lr = self.params['learning_rate']
        for _ in range(self.params['epochs']):
            _, grad = self.loss_and_gradient(theta, X, y)
            theta -= lr * grad
        self.theta_ = theta
        return self

    def decision_function(self, X):
        weights, bias = self.unpack(self.theta_)
        return X @ weights + bias

    def predict_scores(self, X):
        return sigmoid(self.decision_function(X))


class LinearSVM(Estimator):
    """
    SVM lineal: descenso estocástico sobre la pérdida hinge con L2.

    Tasa de aprendizaje lr/(época+1); el orden de los registros en cada época
    sale del generador de la semilla. El puntaje es σ(margen).
    """

    def __init__(self, params, seed=0, threads=1):
        super().__init__(params, seed, threads)
        require_positive(params, 'learning_rate', 'l2')
        require_positive(params, 'epochs', 'batch_size', integer=True)

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        require_both_classes(y, 'linear_svm')
        signs = 2.0 * y - 1.0
        m, n = X.shape
        batch = min(self.params['batch_size'], m)
        l2 = self.params['l2']
        weights, bias = np.zeros(n), 0.0
        rng = rng_for(self.seed)

        for epoch in range(self.params['epochs']):
            eta = self.params['learning_rate'] / (epoch + 1)
            order = rng.permutation(m)
            for start in range(0, m, batch):
                rows = order[start:start + batch]
                margins = signs[rows] * (X[rows] @ weights + bias)
                violated = rows[margins < 1.0]
                weights *= 1.0 - eta * l2
                if violated.size:
                    weights += eta * (signs[violated] @ X[violated]) / rows.size
                    bias += eta * signs[violated].sum() / rows.size
        self.weights_ = weights
        self.bias_ = bias
        return self

    def decision_function(self, X):
        return X @ self.weights_ + self.bias_

    def predict_scores(self, X):
        return sigmoid(self.decision_function(X))
