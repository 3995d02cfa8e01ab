import itertools
import math
from collections import Counter

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError, EmptySelectionError
from core.testing import informative_dataset, statlog_like_text
from dataset.domain import Dataset, SplitPlan, continuous_specs
from dataset.services import parse_statlog
from .serializers import FilterParamsSerializer, FilterResultSerializer
from .services import (
    discretize, entropy, evaluate_filter, fcbf, mutual_information, relief, run_filter,
    symmetric_uncertainty,
)


def table_entropy(v):
    counts = Counter(v)
    return -sum((c / len(v)) * math.log2(c / len(v)) for c in counts.values())


def table_mutual_information(a, b):
    n = len(a)
    pa, pb, pab = Counter(a), Counter(b), Counter(zip(a, b))
    return sum(
        (c / n) * math.log2((c / n) / ((pa[x] / n) * (pb[y] / n)))
        for (x, y), c in pab.items()
    )


class DiscretizeTests(SimpleTestCase):

    def test_median_split(self):
        self.assertEqual(discretize([1, 2, 3, 4], 2).tolist(), [0, 0, 1, 1])

    def test_thirds(self):
        self.assertEqual(discretize([3, 1, 2, 4, 6, 5], 3).tolist(), [1, 0, 0, 1, 2, 2])

    def test_constant_column(self):
        self.assertEqual(discretize([7.0] * 12, 10).tolist(), [0] * 12)

    def test_ties_share_the_lower_bin(self):
        codes = discretize([1, 1, 1, 2, 3, 4], 2)
        self.assertEqual(codes.tolist(), [0, 0, 0, 1, 1, 1])
        codes = discretize([1, 2, 2, 2, 3, 4], 2)
        self.assertEqual(codes[1:4].tolist(), [0, 0, 0])

    def test_preconditions(self):
        with self.assertRaises(ArgumentError):
            discretize([1, 2, 3], 1)
        with self.assertRaises(ArgumentError):
            discretize([1, 2, 3], 5)


class InformationTests(SimpleTestCase):

    def test_fair_binary_column(self):
        self.assertEqual(entropy([0, 1] * 5), 1.0)

    def test_self_uncertainty_is_one(self):
        self.assertAlmostEqual(symmetric_uncertainty([0, 1, 2, 2, 1], [0, 1, 2, 2, 1]), 1.0, delta=1e-12)

    def test_independent_pair(self):
        a, b = [0, 0, 1, 1], [0, 1, 0, 1]
        self.assertAlmostEqual(mutual_information(a, b), 0.0, delta=1e-12)
        self.assertAlmostEqual(symmetric_uncertainty(a, b), 0.0, delta=1e-12)

    def test_constant_pair_has_zero_uncertainty(self):
        self.assertEqual(symmetric_uncertainty([1, 1, 1], [2, 2, 2]), 0.0)

    def test_length_mismatch(self):
        with self.assertRaises(ArgumentError):
            mutual_information([0, 1], [0, 1, 1])

    def test_matches_probability_tables(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            size = int(rng.integers(1, 11))
            a = rng.integers(0, int(rng.integers(1, 4)), size=size).tolist()
            b = rng.integers(0, int(rng.integers(1, 4)), size=size).tolist()
            self.assertAlmostEqual(entropy(a), table_entropy(a), delta=1e-10)
            self.assertAlmostEqual(mutual_information(a, b), table_mutual_information(a, b), delta=1e-10)
            self.assertGreaterEqual(mutual_information(a, b), -1e-12)
            self.assertAlmostEqual(symmetric_uncertainty(a, b), symmetric_uncertainty(b, a), delta=1e-12)
            self.assertTrue(0.0 <= symmetric_uncertainty(a, b) <= 1.0)


class FcbfTests(SimpleTestCase):

    def setUp(self):
        base = informative_dataset(m=120, n=4, seed=3)
        X = np.column_stack([base.features[:, 0], base.features[:, 0], base.features[:, 1:]])
        self.ds = Dataset(X, base.labels, continuous_specs(5))

    def test_duplicate_column_survives_once(self):
        result = fcbf(self.ds)
        self.assertIn(0, result.selected)
        self.assertNotIn(1, result.selected)

    def test_independent_feature_is_excluded(self):
        y = np.array([0, 1] * 20)
        independent = np.array([0, 0, 1, 1] * 10)
        ds = Dataset(np.column_stack([y, independent]), y, continuous_specs(2))
        result = fcbf(ds, delta=0.01)
        self.assertEqual(result.selected, [0])

    def test_ranking_follows_class_uncertainty(self):
        result = fcbf(self.ds, delta=0.0)
        weights = result.weights.weights
        self.assertTrue(all(weights[j] > 0.0 for j in result.selected))
        chosen = [j for j in result.ordering if j in result.selected]
        self.assertEqual(chosen, sorted(chosen, key=lambda j: (-weights[j], j)))
        self.assertEqual(sorted(result.ordering), list(range(5)))

    def test_delta_that_removes_everything(self):
        with self.assertRaisesMessage(EmptySelectionError, "delta"):
            fcbf(self.ds, delta=1.0)

    def test_statlog_shaped_data_uses_integer_codes_for_discrete_columns(self):
        ds = parse_statlog(statlog_like_text(m=60, seed=2))
        result = fcbf(ds)
        self.assertIn(12, result.selected)  # thal determina la clase


class ReliefTests(SimpleTestCase):

    def test_constant_feature_has_zero_weight(self):
        base = informative_dataset(m=60, n=3, seed=1)
        X = np.column_stack([base.features, np.full(60, 4.2)])
        result = relief(Dataset(X, base.labels), seed=0)
        self.assertEqual(result.weights.weights[3], 0.0)
        self.assertNotIn(3, result.selected)

    def test_identical_columns_get_identical_weights(self):
        base = informative_dataset(m=60, n=3, seed=2)
        X = np.column_stack([base.features, base.features[:, 1]])
        weights = relief(Dataset(X, base.labels), seed=5).weights.weights
        self.assertEqual(weights[1], weights[3])

    def test_weights_are_bounded_and_repeatable(self):
        ds = informative_dataset(m=80, n=5, seed=4)
        first = relief(ds, k=5, seed=9)
        second = relief(ds, k=5, seed=9, threads=4)
        np.testing.assert_array_equal(first.weights.weights, second.weights.weights)
        self.assertTrue(np.all(np.abs(first.weights.weights) <= 1.0))

    def test_small_class_reduces_k_with_warning(self):
        X = np.arange(20, dtype=float).reshape(-1, 1)
        y = [1, 1, 1] + [0] * 17
        result = relief(Dataset(X, y), k=10, seed=0, top_q=1)
        self.assertIsNotNone(result.warning)

    def test_top_q_mode(self):
        result = relief(informative_dataset(m=80, n=5, seed=6), seed=1, top_q=2)
        self.assertEqual(result.mask.popcount, 2)
        self.assertEqual(list(result.ordering[:2]), sorted(result.selected, key=lambda j: -result.weights.weights[j]))

    def test_needs_both_classes(self):
        with self.assertRaises(ArgumentError):
            relief(Dataset([[1.0], [2.0]], [0, 0]))

    def test_planted_feature_ranks_first(self):
        wins = 0
        for seed in range(100):
            result = relief(informative_dataset(m=200, n=5, seed=seed), seed=seed)
            wins += int(np.argmax(result.weights.weights) == 0)
        self.assertGreaterEqual(wins, 95)


class FilterEvaluationTests(SimpleTestCase):

    def test_filter_accuracy_uses_training_partitions_only(self):
        ds = informative_dataset(m=80, n=4, seed=8)
        for method in ('relief', 'fcbf'):
            evaluation = evaluate_filter(method, ds, SplitPlan.kfold(4, seed=1))
            self.assertEqual(evaluation.scorer.family, 'cart')
            self.assertIn(0, evaluation.result.selected)
            self.assertGreater(evaluation.report.accuracy, 0.8)

    def test_unknown_method(self):
        with self.assertRaises(ArgumentError):
            run_filter('mrmr', informative_dataset(m=20))

    def test_result_json_shape(self):
        data = FilterResultSerializer(fcbf(informative_dataset(m=40, n=3, seed=0))).data
        self.assertEqual(data['method'], 'fcbf')
        self.assertEqual(len(data['weights']), 3)
        self.assertIn('elapsed_ms', data)

    def test_params_serializer_defaults(self):
        serializer = FilterParamsSerializer(data={'method': 'relief'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['k'], 10)
        self.assertFalse(FilterParamsSerializer(data={'method': 'chi2'}).is_valid())
