"""
Frecuencia de selección de cada característica en R ejecuciones de Stacked-GA.
Uso: python manage.py importance config.json --runs 30
"""
from experiments.management.base import ExperimentCommand
from experiments.services import run_importance


class Command(ExperimentCommand):
    help = 'Reporte de importancia: frecuencia de selección sobre ejecuciones sembradas de Stacked-GA'
    stem = 'importance'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--runs', type=int, help='Número de ejecuciones (por defecto importance_runs)')

    def config_flags(self, options):
        return {**super().config_flags(options), 'importance_runs': options.get('runs')}

    def build_table(self, config, ds, options):
        return run_importance(config, ds=ds)
