"""
Historial de invocaciones de la CLI.
"""
from django.db import models

from core.models import TrackedModel


# ============================================================================
# EXPERIMENT RUN - Una fila por invocación de run/matrix/filter/importance
# ============================================================================
class ExperimentRun(TrackedModel):
    """
    Registro de una ejecución.

    `csv_body` guarda exactamente el CSV emitido; dos ejecuciones con el
    mismo `config_hash` deben tener el mismo cuerpo.
    """

    STATUS_RUNNING = 'running'
    STATUS_COMPLETED = 'completed'
    STATUS_FAILED = 'failed'
    STATUS_CHOICES = [
        (STATUS_RUNNING, 'En ejecución'),
        (STATUS_COMPLETED, 'Completada'),
        (STATUS_FAILED, 'Fallida'),
    ]

    command = models.CharField(max_length=30, verbose_name='Comando')
    status = models.CharField(
        max_length=20,
        choices=STATUS_CHOICES,
        default=STATUS_RUNNING,
        verbose_name='Estado'
    )
    config_hash = models.CharField(
        max_length=64,
        blank=True,
        db_index=True,
        help_text='SHA-256 de la configuración resuelta (sin threads ni output_dir)',
        verbose_name='Hash de configuración'
    )
    master_seed = models.BigIntegerField(null=True, blank=True, verbose_name='Semilla maestra')
    exit_code = models.PositiveSmallIntegerField(null=True, blank=True, verbose_name='Código de salida')
    failed_stage = models.CharField(max_length=100, blank=True, verbose_name='Etapa fallida')
    elapsed_ms = models.FloatField(null=True, blank=True, verbose_name='Duración (ms)')
    output_dir = models.CharField(max_length=500, blank=True, verbose_name='Directorio de salida')
    csv_body = models.TextField(blank=True, verbose_name='Cuerpo CSV')
    message = models.TextField(blank=True, verbose_name='Mensaje')

    class Meta:
        db_table = 'experiment_runs'
        verbose_name = 'Ejecución'
        verbose_name_plural = 'Ejecuciones'
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f"{self.command} [{self.status}] {self.uuid}"

    def finish(self, exit_code, elapsed_ms, csv_body='', failed_stage='', message=''):
        self.status = self.STATUS_COMPLETED if exit_code == 0 else self.STATUS_FAILED
        self.exit_code = exit_code
        self.elapsed_ms = round(elapsed_ms, 1)
        self.csv_body = csv_body
        self.failed_stage = failed_stage or ''
        self.message = message
        self.save()
