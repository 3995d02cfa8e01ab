import itertools

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError
from core.testing import informative_dataset, toy_dataset, two_informative_dataset
from dataset.audit import LABEL_AUDIT
from dataset.domain import FeatureMask, SplitPlan
from dataset.services import apply_mask
from learners.services import default_spec, evaluate
from .domain import FitnessRecord, GAConfig, GAResult
from .serializers import GAConfigSerializer, GAResultSerializer
from .services import (
    FitnessCache, LearnerFitness, evolve, exhaustive_search, fitness, penalized, run_ga,
    selection_frequency,
)

SMALL = GAConfig(population_size=8, generations=3, seed=5)


class GAConfigTests(SimpleTestCase):

    def test_defaults(self):
        config = GAConfig()
        self.assertEqual((config.population_size, config.generations, config.elitism), (50, 100, 2))
        self.assertEqual(config.mutation_for(13), 1 / 13)

    def test_invalid_combinations(self):
        with self.assertRaises(ArgumentError):
            GAConfig(population_size=4, elitism=4)
        with self.assertRaises(ArgumentError):
            GAConfig(population_size=4, tournament_size=5)
        with self.assertRaises(ArgumentError):
            GAConfig(crossover_rate=1.5)
        with self.assertRaises(ArgumentError):
            GAConfig(fitness_folds=1)

    def test_serializer_cross_field_errors(self):
        serializer = GAConfigSerializer(data={'population_size': 4, 'elitism': 4, 'tournament_size': 6})
        self.assertFalse(serializer.is_valid())
        self.assertIn('elitism', serializer.errors)
        self.assertIn('tournament_size', serializer.errors)

    def test_serializer_round_trip(self):
        serializer = GAConfigSerializer(data=GAConfigSerializer(SMALL).data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), SMALL)


class FitnessTests(SimpleTestCase):

    def setUp(self):
        self.train = informative_dataset(m=60, n=3, seed=2)

    def test_unpenalized_full_mask_is_plain_cross_validation(self):
        spec = default_spec('knn')
        value = fitness(FeatureMask.full(3), spec, self.train, folds=5, seed=7, alpha=0.0)
        self.assertEqual(value, evaluate(spec, self.train, SplitPlan.kfold(5, seed=7)).accuracy)

    def test_penalty_prefers_smaller_masks(self):
        small = penalized([0.8, 0.8], 0, popcount=1, n=4, alpha=0.01)
        large = penalized([0.8, 0.8], 0, popcount=3, n=4, alpha=0.01)
        self.assertGreater(small.fitness, large.fitness)

    def test_every_mask_matches_independent_recomputation(self):
        spec = default_spec('naive_bayes')
        for bits in itertools.product((False, True), repeat=3):
            if not any(bits):
                continue
            mask = FeatureMask(bits)
            expected = evaluate(spec, apply_mask(self.train, mask), SplitPlan.kfold(4, seed=1)).accuracy
            expected -= 0.05 * mask.popcount / 3
            self.assertAlmostEqual(fitness(mask, spec, self.train, 4, 1, alpha=0.05), expected, delta=1e-12)

    def test_cache_returns_identical_records(self):
        calls = []

        def evaluator(mask):
            calls.append(mask.key())
            return FitnessRecord(fitness=float(mask.popcount), accuracy=1.0)

        cache = FitnessCache(evaluator)
        mask = FeatureMask.from_indices([0, 2], 3)
        self.assertIs(cache(mask), cache(FeatureMask.from_indices([2, 0], 3)))
        self.assertEqual(len(calls), 1)
        self.assertEqual(len(cache), 1)


class EvolveTests(SimpleTestCase):

    def test_repeated_runs_are_identical(self):
        train = informative_dataset(m=50, n=5, seed=3)
        first = evolve(SMALL, default_spec('knn'), train)
        second = evolve(SMALL, default_spec('knn'), train, threads=4)
        self.assertEqual(first.best_mask, second.best_mask)
        self.assertEqual(first.best_fitness, second.best_fitness)
        self.assertEqual(first.history, second.history)
        np.testing.assert_array_equal(first.selection_frequency, second.selection_frequency)

    def test_fitness_folds_leave_no_audit_entries(self):
        before = len(LABEL_AUDIT)
        evolve(SMALL, default_spec('knn'), informative_dataset(m=50, n=5, seed=3), threads=2)
        self.assertEqual(len(LABEL_AUDIT), before)

    def test_history_never_decreases_with_elitism(self):
        def evaluator(mask):
            score = sum(bit * w for bit, w in zip(mask.bits, (0.5, -0.2, 0.3, 0.1, -0.4, 0.2)))
            return FitnessRecord(fitness=score, accuracy=score)

        result = run_ga(GAConfig(population_size=10, generations=15, elitism=1, seed=3), evaluator, 6)
        bests = [best for best, _ in result.history]
        self.assertEqual(len(result.history), 16)
        self.assertEqual(bests, sorted(bests))

    def test_every_evaluated_individual_has_a_bit(self):
        seen = []

        def evaluator(mask):
            seen.append(mask)
            return FitnessRecord(fitness=-mask.popcount, accuracy=0.0)

        result = run_ga(GAConfig(population_size=12, generations=10, mutation_rate=0.9, seed=1), evaluator, 3)
        self.assertTrue(all(mask.popcount >= 1 for mask in seen))
        self.assertEqual(result.evaluations, len(seen))
        self.assertEqual(result.best_mask.popcount, 1)
        self.assertEqual(result.best_mask.indices, [2])  # empate -> máscara lexicográficamente menor

    def test_minimal_configuration(self):
        train = informative_dataset(m=30, n=3, seed=0)
        result = evolve(GAConfig(population_size=2, generations=1, elitism=1, tournament_size=1), default_spec('cart'), train)
        self.assertGreaterEqual(result.best_mask.popcount, 1)
        self.assertEqual(result.history_array().shape, (2, 2))

    def test_reaches_exhaustive_maximum_on_toy_data(self):
        config = GAConfig(population_size=16, generations=20)
        spec = default_spec('knn')
        hits = 0
        for seed in range(5):
            train = toy_dataset(m=40, n=4, seed=seed)
            result = evolve(config.with_seed(seed), spec, train)
            evaluator = LearnerFitness(spec, train, config.fitness_folds, seed, config.alpha)
            _, best, records = exhaustive_search(evaluator, 4)
            self.assertEqual(len(records), 15)
            self.assertLessEqual(result.best_fitness, best.fitness)
            hits += int(result.best_fitness == best.fitness)
        self.assertGreaterEqual(hits, 4)

    def test_recovers_both_informative_features(self):
        config = GAConfig(population_size=20, generations=15)
        found = 0
        for seed in range(20):
            result = evolve(config.with_seed(seed), default_spec('knn'), two_informative_dataset(seed=seed))
            found += int({0, 1} <= set(result.best_mask.indices))
        self.assertGreaterEqual(found, 18)


class SelectionFrequencyTests(SimpleTestCase):

    def result(self, indices, n):
        mask = FeatureMask.from_indices(indices, n)
        return GAResult(best_mask=mask, best_fitness=0.0, selection_frequency=mask.as_array().astype(float))

    def test_single_run(self):
        self.assertEqual(selection_frequency([self.result([0, 2], 3)]).tolist(), [1.0, 0.0, 1.0])

    def test_unanimous_feature(self):
        freq = selection_frequency([self.result([1], 3), self.result([1, 2], 3)])
        self.assertEqual(freq[1], 1.0)
        self.assertEqual(freq[2], 0.5)

    def test_mismatched_width(self):
        with self.assertRaises(ArgumentError):
            selection_frequency([self.result([0], 3), self.result([0], 4)])
        with self.assertRaises(ArgumentError):
            selection_frequency([])

    def test_result_json(self):
        result = self.result([0, 2], 3)
        result.history = [(0.5, 0.4), (0.6, 0.45)]
        data = GAResultSerializer(result).data
        self.assertEqual(data['best_mask'], [0, 2])
        self.assertEqual(data['history'], [[0.5, 0.4], [0.6, 0.45]])
        self.assertFalse(data['flagged'])
