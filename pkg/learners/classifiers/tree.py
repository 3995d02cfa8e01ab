"""
Árbol CART (impureza de Gini) y bosque aleatorio.
"""
import math

import numpy as np

from core.parallel import ordered_map
from core.seeds import rng_for
from .base import Estimator, require_positive


class Node:
    """Nodo del árbol: hoja si `feature` es None."""

    __slots__ = ('feature', 'threshold', 'left', 'right', 'score', 'size')

    def __init__(self, score, size):
        self.feature = None
        self.threshold = 0.0
        self.left = None
        self.right = None
        self.score = score
        self.size = size

    @property
    def is_leaf(self):
        return self.feature is None


class DecisionTree(Estimator):
    """
    CART binario con Gini.

    Umbrales en los puntos medios entre valores únicos ordenados. Un nodo
    deja de dividirse al llegar a max_depth, al ser puro o cuando ninguna
    división deja min_samples_leaf registros en ambos lados. Empates de
    impureza -> menor índice de característica y luego menor umbral.
    Puntaje de hoja = fracción de la clase 1.
    """

    def __init__(self, params, seed=0, threads=1, rng=None):
        super().__init__(params, seed, threads)
        require_positive(params, 'max_depth', 'min_samples_leaf', integer=True)
        max_features = params.get('max_features')
        if max_features is not None and max_features != 'sqrt':
            require_positive(params, 'max_features', integer=True)
        self.rng = rng

    def _n_candidates(self, n):
        max_features = self.params.get('max_features')
        if max_features is None:
            return n
        if max_features == 'sqrt':
            return max(1, math.ceil(math.sqrt(n)))
        return min(int(max_features), n)

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        self.n_features_ = X.shape[1]
        self._rng = self.rng if self.rng is not None else rng_for(self.seed)
        self.root_ = self._grow(X, y, depth=0)
        return self

    def _grow(self, X, y, depth):
        m = y.shape[0]
        node = Node(score=float(y.mean()), size=m)
        positives = y.sum()
        if depth >= self.params['max_depth'] or positives in (0, m):
            return node
        if m < 2 * self.params['min_samples_leaf']:
            return node

        split = self._best_split(X, y)
        if split is None:
            return node
        feature, threshold = split
        goes_left = X[:, feature] <= threshold
        node.feature = feature
        node.threshold = threshold
        node.left = self._grow(X[goes_left], y[goes_left], depth + 1)
        node.right = self._grow(X[~goes_left], y[~goes_left], depth + 1)
        return node

    def _candidate_features(self, n):
        count = self._n_candidates(n)
        if count >= n:
            return range(n)
        return np.sort(self._rng.choice(n, size=count, replace=False))

    def _best_split(self, X, y):
        m, n = X.shape
        min_leaf = self.params['min_samples_leaf']
        total_pos = y.sum()
        best = None
        best_impurity = np.inf

        for feature in self._candidate_features(n):
            order = np.argsort(X[:, feature], kind='stable')
            xs = X[order, feature]
            cum_pos = np.cumsum(y[order])

            # i = tamaño del lado izquierdo; solo donde cambia el valor
            sizes = np.arange(1, m)
            valid = (xs[1:] > xs[:-1]) & (sizes >= min_leaf) & (m - sizes >= min_leaf)
            if not valid.any():
                continue
            left_n = sizes[valid].astype(float)
            left_pos = cum_pos[:-1][valid]
            right_n = m - left_n
            right_pos = total_pos - left_pos
            p_left = left_pos / left_n
            p_right = right_pos / right_n
            impurity = (left_n * 2 * p_left * (1 - p_left) + right_n * 2 * p_right * (1 - p_right)) / m

            pos = int(np.argmin(impurity))
            if impurity[pos] < best_impurity:
                best_impurity = impurity[pos]
                i = int(sizes[valid][pos])
                best = (int(feature), float((xs[i - 1] + xs[i]) / 2.0))
        return best

    def predict_scores(self, X):
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        self._route(self.root_, X, np.arange(X.shape[0]), out)
        return out

    def _route(self, node, X, rows, out):
        if node.is_leaf or rows.size == 0:
            out[rows] = node.score
            return
        goes_left = X[rows, node.feature] <= node.threshold
        self._route(node.left, X, rows[goes_left], out)
        self._route(node.right, X, rows[~goes_left], out)

    def depth(self):
        def _depth(node):
            return 0 if node.is_leaf else 1 + max(_depth(node.left), _depth(node.right))
        return _depth(self.root_)


class RandomForest(Estimator):
    """
    Bosque aleatorio: n_trees árboles CART sobre muestras bootstrap de tamaño m,
    ⌈√n⌉ características candidatas por división, voto por mayoría.

    El árbol t usa flujos aleatorios derivados de (seed, t), así el resultado
    no depende de cuántos árboles se entrenan en paralelo.
    Puntaje = fracción de árboles que votan 1.
    """

    def __init__(self, params, seed=0, threads=1):
        super().__init__(params, seed, threads)
        require_positive(params, 'n_trees', integer=True)
        self.tree_params = {
            'max_depth': params['max_depth'],
            'min_samples_leaf': params['min_samples_leaf'],
            'max_features': params['max_features'],
        }
        DecisionTree(self.tree_params, seed)  # valida parámetros del árbol

    def _fit_tree(self, t):
        X, y = self._X, self._y
        sample = rng_for(self.seed, t, 0).integers(0, X.shape[0], size=X.shape[0])
        tree = DecisionTree(self.tree_params, self.seed, rng=rng_for(self.seed, t, 1))
        return tree.fit(X[sample], y[sample])

    def fit(self, X, y):
        self._X = np.asarray(X, dtype=float)
        self._y = np.asarray(y, dtype=float)
        try:
            self.trees_ = ordered_map(self._fit_tree, range(self.params['n_trees']), self.threads)
        finally:
            del self._X, self._y
        return self

    def predict_scores(self, X):
        votes = np.array([tree.predict_scores(X) >= 0.5 for tree in self.trees_])
        return votes.mean(axis=0)
