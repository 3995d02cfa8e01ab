"""
Panel de administración del historial de ejecuciones.
"""
from django.contrib import admin

from .models import ExperimentRun


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """
    Solo lectura: las filas las escribe la CLI.
    """
    list_display = ('command', 'status', 'exit_code', 'master_seed', 'short_hash', 'elapsed_ms', 'created_at')
    list_filter = ('command', 'status', 'created_at')
    search_fields = ('uuid', 'config_hash', 'failed_stage', 'message')
    readonly_fields = [field.name for field in ExperimentRun._meta.fields]

    fieldsets = (
        ('Ejecución', {
            'fields': ('uuid', 'command', 'status', 'exit_code', 'failed_stage', 'message')
        }),
        ('Reproducibilidad', {
            'fields': ('config_hash', 'master_seed', 'output_dir', 'csv_body')
        }),
        ('Timestamps', {
            'fields': ('elapsed_ms', 'created_at', 'updated_at'),
            'classes': ('collapse',)
        }),
    )

    def short_hash(self, obj):
        """Primeros 12 caracteres del hash"""
        return obj.config_hash[:12]
    short_hash.short_description = 'Hash'

    def has_add_permission(self, request):
        return False
