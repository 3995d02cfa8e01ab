from unittest import skipUnless

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError, TrainingError
from core.testing import informative_dataset, statlog_path, toy_dataset
from dataset.domain import Dataset, FeatureMask
from dataset.services import holdout_split, load_dataset, scale_pair
from ga_wrapper.domain import GAConfig
from ga_wrapper.services import exhaustive_search
from learners.domain import ClassifierSpec
from learners.services import default_spec, fit
from .domain import StackSpec, parse_meta_mode
from .serializers import StackSpecSerializer
from .services import StackFitness, build_meta, default_stack_spec, fit_stack, predict_stack, stacked_ga

MEMORIZER = ClassifierSpec('knn', {'k': 1})
QUICK_META = ClassifierSpec('logistic_regression', {'epochs': 300})


def quick_stack(meta_mode='oof:3', **kwargs):
    first_level = [default_spec('knn'), default_spec('naive_bayes'), default_spec('cart')]
    return StackSpec(first_level, QUICK_META, meta_mode=meta_mode, **kwargs)


def random_label_dataset(seed, m=80):
    rng = np.random.default_rng(seed)
    return Dataset(rng.normal(size=(m, 3)), rng.integers(0, 2, size=m))


class StackSpecTests(SimpleTestCase):

    def test_meta_mode_parsing(self):
        self.assertEqual(parse_meta_mode('resubstitution'), ('resub', None))
        self.assertEqual(parse_meta_mode('oof:5'), ('oof', 5))
        self.assertEqual(parse_meta_mode('out_of_fold:3'), ('oof', 3))
        for bad in ('oof', 'oof:1', 'cv:5'):
            with self.assertRaises(ArgumentError):
                parse_meta_mode(bad)

    def test_first_level_must_be_distinct_and_non_empty(self):
        with self.assertRaises(ArgumentError):
            StackSpec([default_spec('knn'), default_spec('knn')], QUICK_META)
        with self.assertRaises(ArgumentError):
            StackSpec([], QUICK_META)
        StackSpec([default_spec('knn', 1), default_spec('knn', 2)], QUICK_META)

    def test_default_roster(self):
        spec = default_stack_spec(seed=3)
        self.assertEqual([s.short_name for s in spec.first_level], ['rf', 'knn', 'mlp', 'cart', 'nb', 'lr', 'svm'])
        self.assertEqual(spec.meta_learner.family, 'logistic_regression')
        self.assertEqual(spec.meta_mode, 'oof:5')
        self.assertEqual(default_stack_spec(seed=3), spec)

    def test_serializer_round_trip(self):
        spec = quick_stack('resub', hard_labels=True, seed=4)
        serializer = StackSpecSerializer(data=StackSpecSerializer(spec).data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), spec)

    def test_serializer_rejects_bad_members(self):
        data = {'first_level': [{'family': 'knn'}], 'meta_learner': {'family': 'xgboost'}, 'meta_mode': 'oof:9x'}
        serializer = StackSpecSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('meta_learner', serializer.errors)
        self.assertIn('meta_mode', serializer.errors)


class BuildMetaTests(SimpleTestCase):

    def setUp(self):
        self.train = informative_dataset(m=60, n=4, seed=1)

    def test_meta_dataset_is_m_by_T(self):
        for mode in ('resub', 'oof:5'):
            models, meta = build_meta(quick_stack(mode), self.train)
            self.assertEqual(meta.shape, (60, 3))
            self.assertEqual(len(models), 3)

    def test_memorizer_column_equals_labels_under_resubstitution(self):
        spec = StackSpec([MEMORIZER], QUICK_META, meta_mode='resub')
        _, meta = build_meta(spec, self.train)
        np.testing.assert_array_equal(meta.z[:, 0], self.train.labels)

    def test_out_of_fold_exposes_resubstitution_leakage(self):
        for seed in range(5):
            ds = random_label_dataset(seed)
            _, resub = build_meta(StackSpec([MEMORIZER], QUICK_META, meta_mode='resub'), ds)
            _, oof = build_meta(StackSpec([MEMORIZER], QUICK_META, meta_mode='oof:5', seed=seed), ds)
            resub_acc = np.mean((resub.z[:, 0] >= 0.5) == ds.labels)
            oof_acc = np.mean((oof.z[:, 0] >= 0.5) == ds.labels)
            self.assertEqual(resub_acc, 1.0)
            self.assertLess(oof_acc, 0.75)
            self.assertGreaterEqual(resub_acc, oof_acc)

    def test_hard_labels_are_binary(self):
        _, meta = build_meta(quick_stack('oof:3', hard_labels=True), self.train)
        self.assertTrue(np.isin(meta.z, (0.0, 1.0)).all())

    def test_training_error_names_the_learner(self):
        spec = StackSpec([default_spec('knn'), default_spec('logistic_regression')], QUICK_META, meta_mode='resub')
        with self.assertRaises(TrainingError) as ctx:
            build_meta(spec, Dataset([[1.0], [2.0], [3.0]], [1, 1, 1]))
        self.assertEqual(ctx.exception.learner_index, 1)
        self.assertEqual(ctx.exception.stage, 'first_level')

    def test_too_few_records_for_out_of_fold_is_a_training_error(self):
        tiny = Dataset([[0.0], [1.0], [2.0]], [0, 1, 0])
        with self.assertRaises(TrainingError) as ctx:
            build_meta(quick_stack('oof:5'), tiny)
        self.assertEqual(ctx.exception.stage, 'meta')

    def test_small_inner_partitions_count_as_failed_folds(self):
        ds = Dataset(np.arange(12.0).reshape(6, 2), [0, 1] * 3)
        record = StackFitness(quick_stack('oof:5'), ds, folds=2, seed=0)(FeatureMask.full(2))
        self.assertEqual(record.failed_folds, 2)
        self.assertEqual(record.accuracy, 0.0)


class StackedModelTests(SimpleTestCase):

    def setUp(self):
        self.train = informative_dataset(m=60, n=4, seed=2)

    def test_composition_law(self):
        model = fit_stack(quick_stack(), self.train)
        probes = np.random.default_rng(0).normal(size=(100, 4))
        for x in probes:
            row = [base.score(x) for base in model.first_level_models]
            label, score = predict_stack(model, x)
            self.assertEqual(label, model.meta_model.predict(row))
            self.assertEqual(score, model.meta_model.score(row))

    def test_meta_model_consumes_T_inputs(self):
        model = fit_stack(quick_stack(), self.train)
        self.assertEqual(model.meta_model.n_in, 3)
        self.assertEqual(model.n_in, 4)
        with self.assertRaises(ArgumentError):
            predict_stack(model, [0.1, 0.2])

    def test_perfect_first_level_gives_perfect_training_accuracy(self):
        spec = StackSpec([MEMORIZER, default_spec('cart')], QUICK_META, meta_mode='resub')
        model = fit_stack(spec, self.train)
        self.assertEqual(np.mean(model.predict_many(self.train.features) == self.train.labels), 1.0)
        for i in (0, 30, 59):
            self.assertEqual(predict_stack(model, self.train.features[i])[0], self.train.labels[i])

    def test_same_spec_same_predictions(self):
        probes = np.random.default_rng(1).normal(size=(20, 4))
        np.testing.assert_array_equal(
            fit_stack(quick_stack(), self.train).score_many(probes),
            fit_stack(quick_stack(), self.train, threads=3).score_many(probes),
        )


class StackedGATests(SimpleTestCase):

    def test_reaches_exhaustive_maximum_on_toy_data(self):
        config = GAConfig(population_size=16, generations=20)
        spec = quick_stack()
        hits = 0
        for seed in range(5):
            train = toy_dataset(m=40, n=4, seed=seed)
            result, model = stacked_ga(spec, config.with_seed(seed), train)
            evaluator = StackFitness(spec, train, config.fitness_folds, seed, config.alpha)
            _, best, _ = exhaustive_search(evaluator, 4)
            self.assertLessEqual(result.best_fitness, best.fitness)
            hits += int(result.best_fitness == best.fitness)
            self.assertEqual(model.n_in, result.best_mask.popcount)
        self.assertGreaterEqual(hits, 4)

    def test_history_is_monotone(self):
        result, _ = stacked_ga(quick_stack(), GAConfig(population_size=6, generations=4, seed=2),
                               informative_dataset(m=40, n=4, seed=3))
        bests = [best for best, _ in result.history]
        self.assertEqual(bests, sorted(bests))

    def test_degenerate_configuration(self):
        config = GAConfig(population_size=2, generations=1, elitism=1, tournament_size=1)
        result, model = stacked_ga(quick_stack(), config, informative_dataset(m=30, n=3, seed=0))
        self.assertGreaterEqual(result.best_mask.popcount, 1)
        self.assertEqual(model.meta_model.n_in, 3)


@skipUnless(statlog_path(), "heart.dat no disponible")
class StatlogStackTests(SimpleTestCase):

    def test_single_learner_stack_tracks_its_base(self):
        ds = load_dataset(statlog_path())
        train, test = scale_pair(*holdout_split(ds, 0.75, seed=0))
        base = fit(default_spec('naive_bayes'), train)
        stack = fit_stack(StackSpec([default_spec('naive_bayes')], default_spec('logistic_regression')), train)
        base_acc = np.mean(base.predict_many(test.features) == test.labels)
        stack_acc = np.mean(stack.predict_many(test.features) == test.labels)
        self.assertGreaterEqual(stack_acc, base_acc - 0.02)
