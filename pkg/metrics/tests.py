import itertools
import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError
from .domain import METRIC_NAMES, ConfusionMatrix, MetricReport
from .serializers import MetricReportSerializer
from .services import (
    accuracy, auc, average_reports, confusion, f1, npv, ppv, report, sensitivity,
    specificity, youden,
)


def pairwise_auc(y_true, scores):
    """Conteo exhaustivo positivo-negativo (empates = 0.5)."""
    pos = [s for y, s in zip(y_true, scores) if y == 1]
    neg = [s for y, s in zip(y_true, scores) if y == 0]
    total = 0.0
    for p, q in itertools.product(pos, neg):
        total += 1.0 if p > q else 0.5 if p == q else 0.0
    return total / (len(pos) * len(neg))


class ConfusionTests(SimpleTestCase):

    def test_perfect_prediction(self):
        self.assertEqual(confusion([1, 1, 0, 0], [1, 1, 0, 0]), ConfusionMatrix(tp=2, fp=0, tn=2, fn=0))

    def test_total_inversion(self):
        self.assertEqual(confusion([1, 0], [0, 1]), ConfusionMatrix(tp=0, fp=1, tn=0, fn=1))

    def test_hand_count(self):
        self.assertEqual(confusion([1, 1, 1, 0], [1, 0, 1, 1]), ConfusionMatrix(tp=2, fp=1, tn=0, fn=1))

    def test_invalid_inputs(self):
        with self.assertRaises(ArgumentError):
            confusion([1, 0], [1])
        with self.assertRaises(ArgumentError):
            confusion([1, 2], [1, 0])
        with self.assertRaises(ArgumentError):
            confusion([], [])


class ScalarMetricTests(SimpleTestCase):

    def test_accuracy_arithmetic(self):
        self.assertAlmostEqual(accuracy(ConfusionMatrix(tp=50, fp=5, tn=40, fn=5)), 0.90)

    def test_sensitivity_specificity_youden(self):
        cm = ConfusionMatrix(tp=9, fp=2, tn=8, fn=1)
        self.assertAlmostEqual(sensitivity(cm), 0.9)
        self.assertAlmostEqual(specificity(cm), 0.8)
        self.assertAlmostEqual(youden(cm), 0.7)

    def test_zero_denominator_is_undefined(self):
        cm = ConfusionMatrix(tp=0, fp=0, tn=3, fn=2)
        self.assertIsNone(ppv(cm))
        self.assertEqual(sensitivity(cm), 0.0)
        self.assertIsNone(youden(ConfusionMatrix(tp=0, fp=1, tn=3, fn=0)))

    def test_random_matrices_match_hand_formulas(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            tp, fp, tn, fn = (int(v) for v in rng.integers(1, 60, size=4))
            cm = ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)
            self.assertAlmostEqual(accuracy(cm), (tp + tn) / (tp + fp + tn + fn), delta=1e-12)
            self.assertAlmostEqual(sensitivity(cm), tp / (tp + fn), delta=1e-12)
            self.assertAlmostEqual(specificity(cm), tn / (tn + fp), delta=1e-12)
            self.assertAlmostEqual(ppv(cm), tp / (tp + fp), delta=1e-12)
            self.assertAlmostEqual(npv(cm), tn / (tn + fn), delta=1e-12)
            self.assertAlmostEqual(f1(cm), 2 * tp / (2 * tp + fp + fn), delta=1e-12)
            self.assertAlmostEqual(youden(cm), tp / (tp + fn) + tn / (tn + fp) - 1, delta=1e-12)
            for value in (accuracy(cm), sensitivity(cm), specificity(cm), ppv(cm), npv(cm), f1(cm)):
                self.assertTrue(0.0 <= value <= 1.0)

    def test_label_swap_duality(self):
        cm = ConfusionMatrix(tp=7, fp=3, tn=11, fn=4)
        swapped = cm.swapped()
        self.assertEqual(sensitivity(cm), specificity(swapped))
        self.assertEqual(ppv(cm), npv(swapped))
        self.assertEqual(accuracy(cm), accuracy(swapped))


class AucTests(SimpleTestCase):

    def test_perfect_separation(self):
        self.assertEqual(auc([1, 1, 0, 0], [0.9, 0.8, 0.2, 0.1]), 1.0)

    def test_all_ties(self):
        self.assertEqual(auc([1, 0, 1, 0], [0.5] * 4), 0.5)

    def test_hand_example(self):
        self.assertEqual(auc([1, 0, 1, 0], [0.9, 0.8, 0.4, 0.1]), 0.75)

    def test_single_class_is_undefined(self):
        self.assertIsNone(auc([1, 1, 1], [0.2, 0.4, 0.9]))

    def test_matches_pairwise_oracle(self):
        rng = np.random.default_rng(3)
        checked = 0
        while checked < 200:
            size = int(rng.integers(2, 13))
            y = rng.integers(0, 2, size=size)
            if y.min() == y.max():
                continue
            scores = np.round(rng.uniform(size=size), 1)  # fuerza algunos empates
            self.assertAlmostEqual(auc(y, scores), pairwise_auc(y.tolist(), scores.tolist()), delta=1e-12)
            checked += 1

    def test_complement_without_ties(self):
        rng = np.random.default_rng(5)
        y = np.array([0, 1] * 6)
        scores = rng.uniform(size=12)
        self.assertAlmostEqual(auc(y, scores) + auc(y, -scores), 1.0, delta=1e-12)


class ReportTests(SimpleTestCase):

    def test_report_uses_half_threshold(self):
        result = report([1, 0, 1, 0], [0.5, 0.49, 0.9, 0.1])
        self.assertEqual(result.accuracy, 1.0)
        self.assertEqual(result.auc, 1.0)

    def test_average_skips_undefined_entries(self):
        a = MetricReport(accuracy=0.8, ppv=None, auc=0.7)
        b = MetricReport(accuracy=0.6, ppv=0.5, auc=None)
        averaged, skipped = average_reports([a, b])
        self.assertAlmostEqual(averaged.accuracy, 0.7)
        self.assertEqual(averaged.ppv, 0.5)
        self.assertEqual(averaged.auc, 0.7)
        self.assertEqual((skipped['ppv'], skipped['auc'], skipped['accuracy']), (1, 1, 0))

    def test_serializes_with_exact_names(self):
        data = MetricReportSerializer(MetricReport(accuracy=0.5, youden=-0.25)).data
        self.assertEqual(tuple(data.keys()), METRIC_NAMES)
        self.assertIsNone(data['ppv'])
        serializer = MetricReportSerializer(data=dict(data))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().youden, -0.25)
        self.assertFalse(math.isnan(data['accuracy']))
