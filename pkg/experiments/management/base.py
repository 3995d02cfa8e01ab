"""
Base común de los comandos de experimentos.

Cada comando resuelve la configuración, carga el dataset, arma un
ReportTable y escribe CSV + texto + configuración resuelta. Cualquier error
se convierte en el payload estándar y en el código de salida de la CLI.
"""
import json
import logging
import time

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.db import DatabaseError

from core.exceptions import EXIT_OK, StageError, command_error_payload
from dataset.services import load_dataset
from experiments.models import ExperimentRun
from experiments.reports import to_csv, to_text, write_outputs
from experiments.services import load_config

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    """
    Subclases: definir `stem` (nombre de los archivos de salida) y
    `build_table(config, ds, options)`.
    """
    stem = 'results'
    config_required = True

    def add_arguments(self, parser):
        if self.config_required:
            parser.add_argument('config', help='Documento JSON de configuración')
        parser.add_argument('--seed', type=int, help='Semilla maestra')
        parser.add_argument('--threads', type=int, help='Límite de workers (1 = secuencial)')
        parser.add_argument('--out', dest='output_dir', help='Directorio de salida')
        parser.add_argument(
            '--set', dest='overrides', action='append', default=[], metavar='CLAVE=VALOR',
            help='Override punteado, p. ej. ga.population_size=50 (repetible)',
        )
        parser.add_argument('--nested', action='store_true', default=None,
                            help='Repetir el AG dentro de cada partición de entrenamiento')
        parser.add_argument('--hard-labels', dest='hard_labels', action='store_true', default=None,
                            help='Meta-características como etiquetas 0/1')

    # ------------------------------------------------------------------
    def config_path(self, options):
        return options.get('config')

    def config_flags(self, options):
        return {
            'seed': options.get('seed'),
            'threads': options.get('threads'),
            'output_dir': options.get('output_dir'),
            'nested': options.get('nested'),
            'hard_labels': options.get('hard_labels'),
        }

    def build_table(self, config, ds, options):
        raise NotImplementedError

    # ------------------------------------------------------------------
    def _start_record(self):
        run = ExperimentRun(command=self.stem)
        if not settings.STACKGA['RECORD_RUNS']:
            return run, False
        try:
            run.save()
        except DatabaseError as exc:
            logger.warning(f"No se pudo registrar la ejecución (¿faltan migraciones?): {exc}")
            return run, False
        return run, True

    def _finish_record(self, run, recorded, **fields):
        if not recorded:
            return
        try:
            run.finish(**fields)
        except DatabaseError as exc:
            logger.warning(f"No se pudo actualizar la ejecución {run.uuid}: {exc}")

    def handle(self, *args, **options):
        started = time.perf_counter()
        run, recorded = self._start_record()
        loading = True

        try:
            config = load_config(self.config_path(options), options['overrides'], **self.config_flags(options))
            ds = load_dataset(config.dataset)
            run.config_hash = config.config_hash()
            run.master_seed = config.seed
            run.output_dir = str(config.output_dir)

            loading = False
            self.stdout.write("=" * 80)
            self.stdout.write(self.style.WARNING(
                f"{self.stem.upper()} | semilla {config.seed} | {config.threads} worker(s) | {config.protocol}"
            ))
            self.stdout.write("=" * 80)

            table = self.build_table(config, ds, options)
            table.provenance['run_uuid'] = str(run.uuid)
            out = write_outputs(table, config, self.stem)
        except Exception as exc:
            payload = command_error_payload(exc, loading=loading)
            if not isinstance(exc, StageError) and payload['exit_code'] != 2:
                logger.exception(f"Fallo inesperado en {self.stem}")
            self.stderr.write(json.dumps(payload, ensure_ascii=False, default=str))
            self._finish_record(
                run, recorded,
                exit_code=payload['exit_code'],
                elapsed_ms=(time.perf_counter() - started) * 1000.0,
                failed_stage=payload['stage'] or ('config' if loading else ''),
                message=payload['message'],
            )
            raise CommandError(payload['message'], returncode=payload['exit_code']) from exc

        self.stdout.write(to_text(table))
        self._finish_record(
            run, recorded,
            exit_code=EXIT_OK,
            elapsed_ms=(time.perf_counter() - started) * 1000.0,
            csv_body=to_csv(table),
        )
        self.stdout.write(self.style.SUCCESS(f"✅ Reportes escritos en {out} (ejecución {run.uuid})"))
