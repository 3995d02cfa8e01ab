from unittest import skipUnless

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError, TrainingError
from core.testing import informative_dataset, statlog_path, xor_dataset
from dataset.domain import Dataset, SplitPlan, continuous_specs
from dataset.services import holdout_split, load_dataset, scale_pair
from .classifiers.base import numerical_gradient
from .classifiers.linear import LogisticRegression
from .classifiers.neural import MultilayerPerceptron
from .domain import DEFAULT_HYPERPARAMETERS, FAMILIES, ClassifierSpec
from .serializers import ClassifierSpecSerializer
from .services import cross_val_accuracies, default_spec, evaluate, evaluate_with, fit

# Hiperparámetros reducidos para que las pruebas por familia sean rápidas
FAST = {
    'random_forest': {'n_trees': 10},
    'logistic_regression': {'epochs': 300},
    'linear_svm': {'epochs': 100},
    'mlp': {'epochs': 300},
}


def fast_spec(family, seed=0):
    return ClassifierSpec(family, FAST.get(family, {}), seed)


def training_accuracy(model, ds):
    return float(np.mean(model.predict_many(ds.features) == ds.labels))


def relative_error(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(a), np.linalg.norm(b), 1e-8)


class ClassifierSpecTests(SimpleTestCase):

    def test_unknown_hyperparameter_is_rejected(self):
        with self.assertRaises(ArgumentError):
            ClassifierSpec('knn', {'neighbours': 3})

    def test_aliases_resolve_to_family(self):
        self.assertEqual(ClassifierSpec('dtree').family, 'cart')
        self.assertEqual(ClassifierSpec('rf').short_name, 'rf')
        with self.assertRaises(ArgumentError):
            ClassifierSpec('boosting')

    def test_defaults_are_applied(self):
        self.assertEqual(default_spec('knn').params, {'k': 5})
        self.assertEqual(ClassifierSpec('mlp', {'hidden_units': 8}).params['epochs'], 3000)

    def test_serializer_round_trip(self):
        spec = ClassifierSpec('linear_svm', {'l2': 0.01}, seed=9)
        data = ClassifierSpecSerializer(spec).data
        self.assertEqual(data, {'family': 'linear_svm', 'hyperparameters': {'l2': 0.01}, 'seed': 9})
        serializer = ClassifierSpecSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), spec)

    def test_serializer_reports_bad_keys(self):
        serializer = ClassifierSpecSerializer(data={'family': 'knn', 'hyperparameters': {'depth': 3}})
        self.assertFalse(serializer.is_valid())
        self.assertIn('hyperparameters', serializer.errors)
        serializer = ClassifierSpecSerializer(data={'family': 'knn', 'hyperparameters': {'k': 0}})
        self.assertFalse(serializer.is_valid())
        serializer = ClassifierSpecSerializer(data={'family': 'gbm'})
        self.assertFalse(serializer.is_valid())
        self.assertIn('family', serializer.errors)


class FitPredictTests(SimpleTestCase):

    def setUp(self):
        self.ds = informative_dataset(m=80, n=4, seed=2)

    def test_cart_separates_four_record_toy_set(self):
        toy = Dataset([[0.0], [1.0], [2.0], [3.0]], [0, 0, 1, 1])
        model = fit(default_spec('cart'), toy)
        self.assertEqual(training_accuracy(model, toy), 1.0)

    def test_knn_one_neighbour_returns_training_label(self):
        model = fit(ClassifierSpec('knn', {'k': 1}), self.ds)
        for i in (0, 17, 55):
            self.assertEqual(model.predict(self.ds.features[i]), int(self.ds.labels[i]))

    def test_knn_vote_tie_goes_to_class_zero(self):
        model = fit(ClassifierSpec('knn', {'k': 2}), Dataset([[0.0], [1.0]], [0, 1]))
        score = model.score(np.array([0.4]))
        self.assertLess(score, 0.5)
        self.assertAlmostEqual(score, 0.5)
        self.assertEqual(model.predict(np.array([0.4])), 0)

    def test_naive_bayes_single_class_always_predicts_it(self):
        ds = Dataset([[1.0, 2.0], [1.5, 2.5], [0.5, 1.0]], [1, 1, 1])
        model = fit(default_spec('naive_bayes'), ds)
        self.assertEqual(model.predict_many(np.array([[0.0, 0.0], [9.0, -4.0]])).tolist(), [1, 1])

    def test_single_class_fails_for_discriminative_families(self):
        ds = Dataset([[1.0], [2.0], [3.0]], [0, 0, 0])
        for family in ('logistic_regression', 'linear_svm', 'mlp'):
            with self.assertRaises(TrainingError):
                fit(fast_spec(family), ds)

    def test_non_finite_features_are_rejected(self):
        ds = Dataset([[1.0], [np.inf], [3.0], [4.0]], [0, 1, 0, 1])
        with self.assertRaises(ArgumentError):
            fit(default_spec('knn'), ds)

    def test_width_mismatch_is_rejected(self):
        model = fit(default_spec('naive_bayes'), self.ds)
        with self.assertRaises(ArgumentError):
            model.predict([0.1, 0.2])
        with self.assertRaises(ArgumentError):
            model.score_many(np.zeros((3, 5)))

    def test_logistic_regression_cannot_solve_xor(self):
        xor = xor_dataset()
        model = fit(default_spec('logistic_regression'), xor)
        self.assertLessEqual(training_accuracy(model, xor), 0.75)

    def test_mlp_solves_xor(self):
        xor = xor_dataset()
        seeds_tried = []
        for seed in range(10):
            seeds_tried.append(seed)
            spec = ClassifierSpec('mlp', {'hidden_units': 8, 'epochs': 5000, 'learning_rate': 0.5}, seed)
            if training_accuracy(fit(spec, xor), xor) == 1.0:
                break
        else:
            self.fail(f"ninguna semilla resolvió XOR: {seeds_tried}")

    def test_same_spec_and_data_give_identical_scores(self):
        probe = np.random.default_rng(4).normal(size=(25, 4))
        for family in FAMILIES:
            first = fit(fast_spec(family, seed=3), self.ds).score_many(probe)
            second = fit(fast_spec(family, seed=3), self.ds).score_many(probe)
            np.testing.assert_array_equal(first, second, err_msg=family)

    def test_random_forest_is_independent_of_thread_count(self):
        probe = np.random.default_rng(5).normal(size=(25, 4))
        spec = fast_spec('random_forest', seed=1)
        np.testing.assert_array_equal(
            fit(spec, self.ds, threads=1).score_many(probe),
            fit(spec, self.ds, threads=4).score_many(probe),
        )

    def test_label_is_score_thresholded_at_half(self):
        probe = np.random.default_rng(6).normal(size=(40, 4))
        for family in FAMILIES:
            model = fit(fast_spec(family), self.ds)
            scores = model.score_many(probe)
            self.assertTrue(((scores >= 0.0) & (scores <= 1.0)).all(), family)
            np.testing.assert_array_equal(model.predict_many(probe), (scores >= 0.5).astype(int))
            self.assertEqual(model.predict(probe[0]), int(model.score(probe[0]) >= 0.5))

    def test_deterministic_families_ignore_record_order(self):
        order = np.random.default_rng(7).permutation(self.ds.m)
        shuffled = Dataset(self.ds.features[order], self.ds.labels[order])
        probe = np.random.default_rng(8).normal(size=(30, 4))
        for family in ('knn', 'naive_bayes', 'cart'):
            np.testing.assert_array_equal(
                fit(default_spec(family), self.ds).predict_many(probe),
                fit(default_spec(family), shuffled).predict_many(probe),
                err_msg=family,
            )


class GradientTests(SimpleTestCase):

    def setUp(self):
        rng = np.random.default_rng(10)
        self.X = rng.normal(size=(30, 4))
        self.y = (rng.uniform(size=30) > 0.5).astype(float)

    def check(self, estimator, size):
        rng = np.random.default_rng(12)
        for _ in range(20):
            theta = rng.normal(scale=0.5, size=size)
            _, analytic = estimator.loss_and_gradient(theta, self.X, self.y)
            numeric = numerical_gradient(lambda t: estimator.loss(t, self.X, self.y), theta)
            self.assertLess(relative_error(analytic, numeric), 1e-4)

    def test_logistic_regression_gradient(self):
        self.check(LogisticRegression(DEFAULT_HYPERPARAMETERS['logistic_regression']), 5)

    def test_mlp_gradient(self):
        params = {**DEFAULT_HYPERPARAMETERS['mlp'], 'hidden_units': 6}
        self.check(MultilayerPerceptron(params), 4 * 6 + 6 + 6 + 1)


class EvaluateTests(SimpleTestCase):

    def test_holdout_evaluation_is_repeatable(self):
        ds = informative_dataset(m=60, n=3, seed=1)
        plan = SplitPlan.holdout(0.75, seed=4)
        for family in ('knn', 'cart', 'logistic_regression'):
            self.assertEqual(evaluate(fast_spec(family), ds, plan), evaluate(fast_spec(family), ds, plan))

    def test_leave_one_out_finds_duplicates(self):
        rng = np.random.default_rng(3)
        base = rng.normal(size=(10, 3))
        labels = rng.integers(0, 2, size=10)
        ds = Dataset(np.vstack([base, base]), np.concatenate([labels, labels]))
        evaluation = evaluate_with(
            lambda train: fit(ClassifierSpec('knn', {'k': 1}), train), ds, SplitPlan.kfold(ds.m, seed=0),
        )
        self.assertEqual(evaluation.report.accuracy, 1.0)
        self.assertEqual(len(evaluation.fold_reports), 20)
        self.assertEqual(evaluation.skipped['auc'], 20)

    def test_failed_fold_counts_as_zero(self):
        def broken(train):
            raise TrainingError("sin convergencia", stage='fit')

        accuracies, failed = cross_val_accuracies(broken, informative_dataset(m=30, seed=0), 3, seed=0)
        self.assertEqual(accuracies, [0.0, 0.0, 0.0])
        self.assertEqual(failed, 3)

    def test_cross_val_matches_kfold_evaluation(self):
        ds = informative_dataset(m=50, n=3, seed=6)
        spec = default_spec('knn')
        accuracies, failed = cross_val_accuracies(lambda train: fit(spec, train), ds, 5, seed=2)
        self.assertEqual(failed, 0)
        self.assertEqual(float(np.mean(accuracies)), evaluate(spec, ds, SplitPlan.kfold(5, seed=2)).accuracy)


@skipUnless(statlog_path(), "heart.dat no disponible")
class StatlogLearnerTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.ds = load_dataset(statlog_path())

    def test_every_family_clears_the_sanity_band(self):
        plan = SplitPlan.kfold(10, seed=0)
        for family in FAMILIES:
            self.assertGreaterEqual(evaluate(default_spec(family), self.ds, plan).accuracy, 0.70, family)

    def test_forest_is_not_worse_than_a_single_tree(self):
        forest, tree = [], []
        for seed in range(30):
            train, test = scale_pair(*holdout_split(self.ds, 0.75, seed))
            forest.append(training_accuracy(fit(default_spec('random_forest', seed), train), test))
            tree.append(training_accuracy(fit(default_spec('cart', seed), train), test))
        self.assertGreaterEqual(np.mean(forest), np.mean(tree) - 0.02)
