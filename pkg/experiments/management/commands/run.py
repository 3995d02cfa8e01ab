"""
Comando principal: ejecuta el pipeline de la configuración.
Uso: python manage.py run config.json [--seed S] [--threads N] [--out DIR] [--nested] [--hard-labels]
"""
from experiments.management.base import ExperimentCommand
from experiments.services import run_experiment


class Command(ExperimentCommand):
    help = 'Ejecuta los métodos del pipeline con el plan de partición de la configuración'
    stem = 'run'

    def build_table(self, config, ds, options):
        return run_experiment(config, ds=ds)
