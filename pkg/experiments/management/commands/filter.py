"""
Ejecuta un filtro sobre un archivo de datos.
Uso: python manage.py filter {relief|fcbf} heart.dat [--config config.json] [--set filter.delta=0.05]
"""
from experiments.management.base import ExperimentCommand
from experiments.services import run_filter_table
from filter_fs.services import FILTERS


class Command(ExperimentCommand):
    help = 'Selección de características con Relief o FCBF y exactitud del evaluador'
    stem = 'filter'
    config_required = False

    def add_arguments(self, parser):
        parser.add_argument('method', choices=FILTERS)
        parser.add_argument('data', help='Archivo heart.dat o CSV con encabezado')
        parser.add_argument('--config', help='Documento JSON de configuración (opcional)')
        super().add_arguments(parser)

    def config_flags(self, options):
        return {**super().config_flags(options), 'dataset': options['data']}

    def build_table(self, config, ds, options):
        return run_filter_table(config, options['method'], ds=ds)
