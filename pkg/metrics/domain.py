"""
Matriz de confusión y reporte de métricas.

Convención estándar: positivo = 1 = enfermedad presente; TP = predicho
positivo y realmente positivo. Un valor None significa "indefinido"
(denominador cero), distinto de 0.
"""
from dataclasses import asdict, dataclass, fields

from core.exceptions import ArgumentError

METRIC_NAMES = ('accuracy', 'sensitivity', 'specificity', 'ppv', 'npv', 'f1', 'youden', 'auc')


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ArgumentError("los conteos de la matriz de confusión no pueden ser negativos")
        if self.total < 1:
            raise ArgumentError("la matriz de confusión necesita al menos un registro")

    @property
    def total(self):
        return self.tp + self.fp + self.tn + self.fn

    def swapped(self):
        """La misma matriz con la clase positiva intercambiada."""
        return ConfusionMatrix(tp=self.tn, fp=self.fn, tn=self.tp, fn=self.fp)


@dataclass(frozen=True)
class MetricReport:
    """Ocho métricas escalares; None = indefinida."""
    accuracy: float = None
    sensitivity: float = None
    specificity: float = None
    ppv: float = None
    npv: float = None
    f1: float = None
    youden: float = None
    auc: float = None

    def to_dict(self):
        """Registro plano clave-valor con los nombres exactos de las métricas."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**{f.name: data.get(f.name) for f in fields(cls)})
