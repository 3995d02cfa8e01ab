import json
import shutil
import tempfile
from io import StringIO
from pathlib import Path
from unittest import skipUnless

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from core.exceptions import ConfigError
from core.testing import statlog_like_text, statlog_path
from dataset.domain import SplitPlan
from dataset.services import load_dataset, parse_statlog
from .domain import MethodRef, ReportTable
from .models import ExperimentRun
from .reports import format_percent, to_csv
from .services import (
    apply_overrides, evaluate_method, importance_verdict, parse_override, resolve_config, run_experiment,
    run_matrix,
)

QUICK = {
    'seed': 7,
    'split': {'kind': 'kfold', 'k': 3},
    'plans': [{'kind': 'holdout', 'fraction': 0.75}, {'kind': 'kfold', 'k': 2}],
    'pipeline': ['nb', 'cart', 'knn_ga', 'stack', 'stacked_ga', 'fcbf'],
    'ga': {'population_size': 4, 'generations': 2, 'fitness_folds': 2, 'elitism': 1, 'tournament_size': 2},
    'stack': {
        'first_level': [{'family': 'knn'}, {'family': 'naive_bayes'}],
        'meta_learner': {'family': 'logistic_regression', 'hyperparameters': {'epochs': 100}},
        'meta_mode': 'oof:2',
    },
}


class ConfigTests(SimpleTestCase):

    def test_override_values_are_parsed_as_json_when_possible(self):
        self.assertEqual(parse_override('ga.population_size=50'), (['ga', 'population_size'], 50))
        self.assertEqual(parse_override('dataset=data/x.csv'), (['dataset'], 'data/x.csv'))
        self.assertEqual(parse_override('nested=true'), (['nested'], True))
        with self.assertRaises(ConfigError):
            parse_override('ga.population_size')

    def test_overrides_create_nested_keys(self):
        document = apply_overrides({'seed': 1}, ['ga.alpha=0.05', 'seed=3'])
        self.assertEqual(document, {'seed': 3, 'ga': {'alpha': 0.05}})
        with self.assertRaises(ConfigError):
            apply_overrides({'seed': 1}, ['seed.value=2'])

    def test_missing_seeds_derive_from_master(self):
        config = resolve_config({'seed': 11})
        again = resolve_config({'seed': 11})
        other = resolve_config({'seed': 12})
        self.assertEqual(config, again)
        self.assertNotEqual(config.ga.seed, other.ga.seed)
        self.assertNotEqual(config.learner('knn').seed, config.learner('cart').seed)
        self.assertEqual(config.pipeline, ('stacked_ga',))
        self.assertEqual([plan.label for plan in config.plans], ['holdout', 'k2', 'k5', 'k10'])
        self.assertEqual(config.split.label, 'k10')

    def test_explicit_seeds_are_kept(self):
        config = resolve_config({'seed': 1, 'ga': {'seed': 99}, 'learners': [{'family': 'rf', 'seed': 5}]})
        self.assertEqual(config.ga.seed, 99)
        self.assertEqual(config.learner('random_forest').seed, 5)

    def test_hash_ignores_threads_and_output_dir(self):
        a = resolve_config({'seed': 4, 'threads': 1, 'output_dir': '/tmp/a'})
        b = resolve_config({'seed': 4, 'threads': 8, 'output_dir': '/tmp/b'})
        self.assertEqual(a.config_hash(), b.config_hash())
        self.assertNotEqual(a.config_hash(), resolve_config({'seed': 5}).config_hash())

    def test_hard_labels_flag_reaches_the_stack(self):
        self.assertTrue(resolve_config({'hard_labels': True}).stack.hard_labels)
        self.assertFalse(resolve_config({}).stack.hard_labels)

    def test_validation_errors_are_reported_per_field(self):
        cases = [
            ({'learners': [{'family': 'xgboost'}]}, 'learners'),
            ({'pipeline': ['rf', 'xgboost_ga']}, 'pipeline'),
            ({'pipeline': ['rf', 'random_forest']}, 'pipeline'),
            ({'ga': {'population_size': 4, 'elitism': 4}}, 'ga'),
            ({'colour': 'red'}, 'colour'),
        ]
        for document, key in cases:
            with self.assertRaises(ConfigError) as ctx:
                resolve_config(document)
            self.assertIn(key, ctx.exception.errors)

    def test_method_catalogue(self):
        self.assertEqual(MethodRef.parse('random_forest'), MethodRef('rf', 'base', 'random_forest'))
        self.assertEqual(MethodRef.parse('dtree_ga').name, 'cart_ga')
        self.assertEqual(MethodRef.parse('fcbf').kind, 'filter')
        self.assertTrue(MethodRef.parse('stacked_ga').uses_ga)


class ReportTests(SimpleTestCase):

    def test_percent_format(self):
        self.assertEqual(format_percent(0.97571), '97.57')
        self.assertEqual(format_percent(None), 'undefined')

    def test_csv_body_excludes_timings(self):
        table = ReportTable('t', ['method', 'accuracy', 'elapsed_ms'], timing_columns=('elapsed_ms',))
        table.add_row(method='rf', accuracy='80.00', elapsed_ms='12.5')
        self.assertEqual(to_csv(table), 'method,accuracy\nrf,80.00\n')

    def test_importance_verdict(self):
        names = ['age', 'ca', 'thal', 'sex']
        leads, text = importance_verdict(names, [0.2, 0.9, 1.0, 0.5])
        self.assertTrue(leads)
        self.assertIn('thal', text)
        leads, _ = importance_verdict(names, [0.95, 0.3, 1.0, 0.5])
        self.assertFalse(leads)
        self.assertFalse(importance_verdict(['age'], [1.0])[0])


class ExperimentServiceTests(SimpleTestCase):

    def setUp(self):
        self.ds = parse_statlog(statlog_like_text(m=40, seed=3))

    def test_rows_follow_pipeline_order(self):
        config = resolve_config({**QUICK, 'pipeline': ['fcbf', 'nb', 'cart_ga', 'cart']})
        table = run_experiment(config, ds=self.ds)
        self.assertEqual([row['method'] for row in table.rows], ['fcbf', 'nb', 'cart_ga', 'cart'])
        self.assertEqual(table.rows[1]['features'], '13')
        self.assertEqual(table.rows[2]['protocol'], 'single-ga')

    def test_nested_protocol_is_labelled(self):
        config = resolve_config({**QUICK, 'pipeline': ['knn_ga'], 'nested': True})
        table = run_experiment(config, ds=self.ds)
        self.assertEqual(table.rows[0]['protocol'], 'nested')
        self.assertEqual(table.provenance['protocol'], 'nested')

    def test_matrix_has_a_column_group_per_plan(self):
        config = resolve_config({**QUICK, 'pipeline': ['nb', 'stacked_ga']})
        table = run_matrix(config, ds=self.ds)
        self.assertEqual(len(table.rows), 2)
        for label in ('holdout', 'k2'):
            for suffix in ('acc', 'sen', 'spec', 'ref_acc'):
                self.assertIn(f'{label}_{suffix}', table.columns)
        self.assertEqual(table.rows[1]['k2_ref_acc'], '92.56')

    def test_single_method_single_plan_matches_run(self):
        document = {**QUICK, 'pipeline': ['nb'], 'plans': [QUICK['split']]}
        config = resolve_config(document)
        run_row = run_experiment(config, ds=self.ds).rows[0]
        matrix_row = run_matrix(config, ds=self.ds).rows[0]
        self.assertEqual(run_row['accuracy'], matrix_row['k3_acc'])
        self.assertEqual(run_row['sensitivity'], matrix_row['k3_sen'])


# Presupuesto reducido: cuatro familias rápidas y un AG corto
STATLOG_BUDGET = {
    'ga': {'population_size': 8, 'generations': 5, 'fitness_folds': 3},
    'learners': [{'family': 'logistic_regression', 'hyperparameters': {'epochs': 300}}],
    'stack': {
        'first_level': [
            {'family': 'knn'}, {'family': 'naive_bayes'}, {'family': 'cart'},
            {'family': 'logistic_regression', 'hyperparameters': {'epochs': 300}},
        ],
        'meta_learner': {'family': 'logistic_regression', 'hyperparameters': {'epochs': 300}},
        'meta_mode': 'oof:3',
    },
}
GA_BASELINES = ('knn_ga', 'nb_ga', 'cart_ga', 'lr_ga')


@skipUnless(statlog_path(), "heart.dat no disponible")
class StatlogStackedGATests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        ds = load_dataset(statlog_path())
        cls.stacked, cls.best_single = [], []
        for seed in range(10):
            config = resolve_config({**STATLOG_BUDGET, 'seed': seed})
            plan = SplitPlan.kfold(10, seed=seed)
            cls.stacked.append(
                evaluate_method(config, MethodRef.parse('stacked_ga'), ds, plan).report.accuracy
            )
            cls.best_single.append(max(
                evaluate_method(config, MethodRef.parse(name), ds, plan).report.accuracy
                for name in GA_BASELINES
            ))

    def test_stacked_ga_keeps_up_with_the_best_wrapped_classifier(self):
        self.assertGreaterEqual(np.mean(self.stacked), np.mean(self.best_single) - 0.01)

    def test_stacked_ga_clears_eighty_percent(self):
        self.assertGreaterEqual(np.mean(self.stacked), 0.80)


class CommandTests(TestCase):

    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())
        self.data = self.tmp / 'heart.dat'
        self.data.write_text(statlog_like_text(m=40, seed=5), encoding='utf-8')
        self.addCleanup(shutil.rmtree, self.tmp, ignore_errors=True)

    def write_config(self, **changes):
        path = self.tmp / 'config.json'
        path.write_text(json.dumps({**QUICK, 'dataset': str(self.data), **changes}), encoding='utf-8')
        return str(path)

    def call(self, *args):
        stdout, stderr = StringIO(), StringIO()
        call_command(*args, stdout=stdout, stderr=stderr)
        return stdout.getvalue()

    def run_csv(self, out, *extra):
        self.call('run', self.write_config(), '--out', str(self.tmp / out), *extra)
        return (self.tmp / out / 'run.csv').read_text(encoding='utf-8')

    def test_repeated_runs_give_identical_csv_bodies(self):
        first = self.run_csv('a')
        second = self.run_csv('b')
        parallel = self.run_csv('c', '--threads', '3')
        self.assertEqual(first, second)
        self.assertEqual(first, parallel)
        header = first.splitlines()[0].split(',')
        self.assertEqual(header[:4], ['method', 'plan', 'protocol', 'features'])
        self.assertNotIn('elapsed_ms', header)
        self.assertEqual([line.split(',')[0] for line in first.splitlines()[1:]], ['nb', 'cart', 'knn_ga', 'stack', 'stacked_ga', 'fcbf'])

    def test_outputs_include_resolved_config_and_provenance(self):
        self.run_csv('out', '--seed', '3')
        resolved = json.loads((self.tmp / 'out' / 'config.resolved.json').read_text(encoding='utf-8'))
        provenance = json.loads((self.tmp / 'out' / 'provenance.json').read_text(encoding='utf-8'))
        self.assertEqual(resolved['seed'], 3)
        self.assertIsNotNone(resolved['ga']['seed'])
        self.assertEqual(provenance['seed'], 3)
        self.assertIn('config_hash', provenance)
        self.assertTrue((self.tmp / 'out' / 'run.txt').is_file())

    def test_run_is_recorded(self):
        self.run_csv('out')
        run = ExperimentRun.objects.get()
        self.assertEqual(run.status, ExperimentRun.STATUS_COMPLETED)
        self.assertEqual(run.exit_code, 0)
        self.assertEqual(run.csv_body, (self.tmp / 'out' / 'run.csv').read_text(encoding='utf-8'))
        self.assertEqual(run.master_seed, 7)

    def test_unknown_family_exits_with_code_2(self):
        stderr = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('run', self.write_config(learners=[{'family': 'xgboost'}]), stdout=StringIO(), stderr=stderr)
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('learners', stderr.getvalue())
        self.assertIn('xgboost', stderr.getvalue())
        self.assertEqual(ExperimentRun.objects.get().status, ExperimentRun.STATUS_FAILED)

    def test_unreadable_inputs_exit_with_code_2(self):
        bad_data = self.tmp / 'bad.dat'
        bad_data.write_text('1 2 3\n', encoding='utf-8')
        for config in (self.write_config(dataset=str(bad_data)), self.write_config(dataset=str(self.tmp / 'missing.dat'))):
            with self.assertRaises(CommandError) as ctx:
                self.call('run', config)
            self.assertEqual(ctx.exception.returncode, 2)
        (self.tmp / 'broken.json').write_text('{"seed": ', encoding='utf-8')
        with self.assertRaises(CommandError) as ctx:
            self.call('run', str(self.tmp / 'broken.json'))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_runtime_failure_names_the_stage(self):
        config = self.write_config(pipeline=['nb', 'fcbf'], filter={'delta': 1.5})
        stderr = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('run', config, '--out', str(self.tmp / 'out'), stdout=StringIO(), stderr=stderr)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertEqual(json.loads(stderr.getvalue())['stage'], 'fcbf')
        self.assertEqual(ExperimentRun.objects.get().failed_stage, 'fcbf')

    def test_set_overrides_reach_the_config(self):
        self.call('run', self.write_config(pipeline=['nb']), '--out', str(self.tmp / 'out'),
                  '--set', 'split.k=2', '--set', 'seed=21')
        resolved = json.loads((self.tmp / 'out' / 'config.resolved.json').read_text(encoding='utf-8'))
        self.assertEqual(resolved['split']['k'], 2)
        self.assertEqual(resolved['seed'], 21)

    def test_filter_command_row_shape(self):
        self.call('filter', 'fcbf', str(self.data), '--out', str(self.tmp / 'out'), '--set', 'split.k=2')
        lines = (self.tmp / 'out' / 'filter.csv').read_text(encoding='utf-8').splitlines()
        header = lines[0].split(',')
        self.assertEqual(header[:4], ['method', 'plan', 'scorer', 'selected_features'])
        row = dict(zip(header, lines[1].split(',')))
        self.assertEqual(row['method'], 'fcbf')
        self.assertIn('thal', row['selected'])
        self.assertGreaterEqual(int(row['selected_features']), 1)

    def test_matrix_command(self):
        self.call('matrix', self.write_config(pipeline=['nb', 'lr']), '--out', str(self.tmp / 'out'))
        lines = (self.tmp / 'out' / 'matrix.csv').read_text(encoding='utf-8').splitlines()
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['nb', 'lr'])

    def test_importance_command(self):
        output = self.call('importance', self.write_config(), '--runs', '2', '--out', str(self.tmp / 'out'))
        lines = (self.tmp / 'out' / 'importance.csv').read_text(encoding='utf-8').splitlines()
        self.assertEqual(len(lines), 14)
        self.assertIn('thal', output)

    def test_history_lists_newest_first(self):
        self.run_csv('a')
        with self.assertRaises(CommandError):
            self.call('run', self.write_config(colour='red'))
        output = self.call('history')
        self.assertLess(output.index('exit=2'), output.index('exit=0'))
