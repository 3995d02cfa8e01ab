import threading
import time

from django.test import SimpleTestCase

from .exceptions import (
    ArgumentError, ConfigError, DatasetParseError, EmptySelectionError, StageError, TrainingError,
    command_error_payload, exit_code_for,
)
from .parallel import ordered_map
from .seeds import derive_seed, rng_for


class SeedTests(SimpleTestCase):

    def test_same_labels_same_seed(self):
        self.assertEqual(derive_seed(42, 'ga', 3), derive_seed(42, 'ga', 3))
        self.assertNotEqual(derive_seed(42, 'ga', 3), derive_seed(42, 'ga', 4))
        self.assertNotEqual(derive_seed(42, 'ga'), derive_seed(43, 'ga'))
        self.assertLess(derive_seed(7, 'split', 'k10'), 1 << 64)

    def test_streams_are_reproducible(self):
        self.assertEqual(rng_for(5, 1, 2).random(4).tolist(), rng_for(5, 1, 2).random(4).tolist())
        self.assertNotEqual(rng_for(5, 1, 2).random(), rng_for(5, 2, 1).random())


class OrderedMapTests(SimpleTestCase):

    def test_results_keep_input_order(self):
        def slow_square(x):
            time.sleep(0.001 * (10 - x))
            return x * x

        self.assertEqual(ordered_map(slow_square, range(10), threads=4), [x * x for x in range(10)])
        self.assertEqual(ordered_map(slow_square, range(10), threads=1), [x * x for x in range(10)])

    def test_single_thread_runs_inline(self):
        seen = ordered_map(lambda _: threading.get_ident(), range(3), threads=1)
        self.assertEqual(set(seen), {threading.get_ident()})

    def test_empty_input_and_more_workers_than_items(self):
        self.assertEqual(ordered_map(str, [], threads=4), [])
        self.assertEqual(ordered_map(str, [1, 2], threads=8), ['1', '2'])


class ErrorPayloadTests(SimpleTestCase):

    def test_exit_codes(self):
        self.assertEqual(exit_code_for(ConfigError("x")), 2)
        self.assertEqual(exit_code_for(DatasetParseError("x", line=3)), 2)
        self.assertEqual(exit_code_for(ArgumentError("x"), loading=True), 2)
        self.assertEqual(exit_code_for(FileNotFoundError("x"), loading=True), 2)
        self.assertEqual(exit_code_for(ArgumentError("x")), 1)
        self.assertEqual(exit_code_for(StageError('fcbf', EmptySelectionError("vacío"))), 1)

    def test_parse_error_carries_the_line(self):
        exc = DatasetParseError("se esperaban 14 campos", line=7)
        self.assertEqual(exc.line, 7)
        self.assertIn("línea 7", exc.message)

    def test_payload_shapes(self):
        payload = command_error_payload(ConfigError("configuración inválida", {'seed': ['inválido']}))
        self.assertEqual(payload['exit_code'], 2)
        self.assertEqual(payload['errors'], {'seed': ['inválido']})
        self.assertFalse(payload['success'])

        payload = command_error_payload(StageError('stacked_ga', TrainingError("x", stage='meta')))
        self.assertEqual((payload['exit_code'], payload['stage']), (1, 'stacked_ga'))

        payload = command_error_payload(RuntimeError())
        self.assertEqual(payload['message'], 'RuntimeError')
