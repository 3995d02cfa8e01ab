"""
Modelo base abstracto para las tablas del proyecto.
Provee id interno, UUID público y timestamps.
"""
from django.db import models
import uuid


# ============================================================================
# MODELO BASE - Registros con trazabilidad
# ============================================================================
class TrackedModel(models.Model):
    """
    Modelo abstracto base para registros persistidos.

    Campos:
        - id: Autoincremental para uso interno
        - uuid: Identificador público (se imprime en la CLI y en la procedencia)
        - created_at: Timestamp de creación (automático)
        - updated_at: Timestamp de última actualización (automático)
    """
    id = models.BigAutoField(primary_key=True)
    uuid = models.UUIDField(
        default=uuid.uuid4,
        editable=False,
        unique=True,
        db_index=True,
        verbose_name='UUID público'
    )
    created_at = models.DateTimeField(auto_now_add=True, verbose_name='Fecha de creación')
    updated_at = models.DateTimeField(auto_now=True, verbose_name='Última actualización')

    class Meta:
        abstract = True  # No crea tabla, solo herencia
        ordering = ['-created_at']
