import numpy as np

from core.seeds import rng_for
from .base import Estimator, log_loss_from_logits, require_positive, sigmoid
from .linear import require_both_classes


class MultilayerPerceptron(Estimator):
    """
    Perceptrón de una capa oculta: tanh en la capa oculta, sigmoide a la
    salida, entropía cruzada y descenso de gradiente completo.

    Pesos iniciales ~ U(-init_scale, init_scale) desde la semilla; sesgos en cero.
    Parámetros planos: theta = [W1 (n×h), b1 (h), w2 (h), b2].
    """

    def __init__(self, params, seed=0, threads=1):
        super().__init__(params, seed, threads)
        require_positive(params, 'hidden_units', 'epochs', integer=True)
        require_positive(params, 'learning_rate', 'init_scale')

    def unpack(self, theta, n):
        h = self.params['hidden_units']
        W1 = theta[:n * h].reshape(n, h)
        b1 = theta[n * h:n * h + h]
        w2 = theta[n * h + h:n * h + 2 * h]
        b2 = theta[-1]
        return W1, b1, w2, b2

    @staticmethod
    def pack(W1, b1, w2, b2):
        return np.concatenate([W1.ravel(), b1, w2, [b2]])

    def initial_theta(self, n):
        h = self.params['hidden_units']
        scale = self.params['init_scale']
        rng = rng_for(self.seed)
        W1 = rng.uniform(-scale, scale, size=(n, h))
        w2 = rng.uniform(-scale, scale, size=h)
        return self.pack(W1, np.zeros(h), w2, 0.0)

    def _forward(self, theta, X):
        W1, b1, w2, b2 = self.unpack(theta, X.shape[1])
        hidden = np.tanh(X @ W1 + b1)
        return hidden, hidden @ w2 + b2

    def loss(self, theta, X, y):
        return log_loss_from_logits(self._forward(np.asarray(theta, dtype=float), X)[1], y)

    def loss_and_gradient(self, theta, X, y):
        theta = np.asarray(theta, dtype=float)
        _, _, w2, _ = self.unpack(theta, X.shape[1])
        hidden, z = self._forward(theta, X)
        loss = log_loss_from_logits(z, y)

        dz = (sigmoid(z) - y) / y.shape[0]
        d_hidden = np.outer(dz, w2) * (1.0 - hidden ** 2)
        grad = self.pack(X.T @ d_hidden, d_hidden.sum(axis=0), hidden.T @ dz, dz.sum())
        return loss, grad

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        require_both_classes(y, 'mlp')
        theta = self.initial_theta(X.shape[1])
        lr = self.params['learning_rate']
        for _ in range(self.params['epochs']):
            _, grad = self.loss_and_gradient(theta, X, y)
            theta -= lr * grad
        self.theta_ = theta
        return self

    def predict_scores(self, X):
        return sigmoid(self._forward(self.theta_, X)[1])
