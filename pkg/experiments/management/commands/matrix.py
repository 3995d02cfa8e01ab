"""
Grilla métodos x planes (holdout, k2, k5, k10) con ACC / Sen / Spec.
Uso: python manage.py matrix config.json [...]
"""
from experiments.management.base import ExperimentCommand
from experiments.services import run_matrix


class Command(ExperimentCommand):
    help = 'Compara los métodos del pipeline en todos los planes de partición'
    stem = 'matrix'

    def build_table(self, config, ds, options):
        return run_matrix(config, ds=ds)
