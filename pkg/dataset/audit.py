"""
Auditoría de acceso a etiquetas por partición.

Los arneses de evaluación verifican con `assert_unread` que nadie leyó las
etiquetas de una partición de prueba antes de predecirla, y la liberan con
`release` una vez puntuada. Solo se registran particiones de prueba.
"""
import threading
from collections import Counter

from core.exceptions import LeakageError


class LabelAudit:
    """Contador de lecturas de etiquetas, seguro entre hilos."""

    def __init__(self):
        self._lock = threading.Lock()
        self._reads = Counter()

    def __len__(self):
        with self._lock:
            return len(self._reads)

    def record(self, dataset):
        if dataset.role != 'test':
            return
        with self._lock:
            self._reads[dataset.partition_id] += 1

    def reads(self, partition_id):
        with self._lock:
            return self._reads[partition_id]

    def release(self, dataset):
        """Olvida la partición: ya fue evaluada."""
        with self._lock:
            self._reads.pop(dataset.partition_id, None)

    def assert_unread(self, dataset):
        """
        Levanta LeakageError si `dataset` es de prueba y sus etiquetas ya se leyeron.
        """
        if dataset.role != 'test':
            return
        count = self.reads(dataset.partition_id)
        if count:
            raise LeakageError(
                f"etiquetas de prueba leídas {count} vez/veces antes de predecir "
                f"(partición {dataset.partition_id})"
            )


LABEL_AUDIT = LabelAudit()
