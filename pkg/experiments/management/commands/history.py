"""
Lista las últimas ejecuciones registradas.
Uso: python manage.py history [--limit 20]
"""
from django.core.management.base import BaseCommand

from experiments.models import ExperimentRun


class Command(BaseCommand):
    help = 'Muestra el historial de ejecuciones (más recientes primero)'

    def add_arguments(self, parser):
        parser.add_argument('--limit', type=int, default=20)
        parser.add_argument('--command', dest='run_command', help='Filtrar por comando (run, matrix, ...)')

    def handle(self, *args, **options):
        runs = ExperimentRun.objects.all()
        if options.get('run_command'):
            runs = runs.filter(command=options['run_command'])
        runs = list(runs[:options['limit']])

        self.stdout.write("=" * 80)
        self.stdout.write(self.style.WARNING("HISTORIAL DE EJECUCIONES"))
        self.stdout.write("=" * 80)

        if not runs:
            self.stdout.write("  (sin ejecuciones registradas)")
            return

        for run in runs:
            status = "✓" if run.status == ExperimentRun.STATUS_COMPLETED else "✗"
            seed = run.master_seed if run.master_seed is not None else '-'
            line = (
                f"  {status} {run.created_at:%Y-%m-%d %H:%M:%S} {run.command:<10} "
                f"exit={run.exit_code} seed={seed} hash={run.config_hash[:12] or '-'} {run.uuid}"
            )
            if run.failed_stage:
                line += f" etapa={run.failed_stage}"
            self.stdout.write(line)
        self.stdout.write("")
