from .bayes import GaussianNaiveBayes
from .linear import LinearSVM, LogisticRegression
from .neighbors import KNearestNeighbors
from .neural import MultilayerPerceptron
from .tree import DecisionTree, RandomForest

# familia -> clase del estimador
ESTIMATORS = {
    'knn': KNearestNeighbors,
    'naive_bayes': GaussianNaiveBayes,
    'cart': DecisionTree,
    'random_forest': RandomForest,
    'logistic_regression': LogisticRegression,
    'linear_svm': LinearSVM,
    'mlp': MultilayerPerceptron,
}
