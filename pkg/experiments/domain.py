"""
Configuración resuelta de un experimento, catálogo de métodos y tabla de reporte.
"""
import hashlib
import json
from dataclasses import dataclass, field

from core.exceptions import ArgumentError
from dataset.serializers import SplitPlanSerializer
from filter_fs.services import FILTERS
from learners.domain import SHORT_NAMES, resolve_family

# ============================================================================
# CATÁLOGO DE MÉTODOS
# ============================================================================
@dataclass(frozen=True)
class MethodRef:
    """
    Método de una fila de reporte.

    Nombres aceptados: rf, knn, mlp, cart (dtree), nb, lr, svm, <base>_ga,
    stack, stacked_ga, relief, fcbf. También los nombres largos de familia.
    """
    name: str
    kind: str
    family: str = None

    @classmethod
    def parse(cls, text):
        raw = str(text).strip().lower()
        if raw in ('stack', 'stacked_ga') + FILTERS:
            kind = 'filter' if raw in FILTERS else raw
            return cls(raw, kind)
        base, is_ga = (raw[:-3], True) if raw.endswith('_ga') else (raw, False)
        try:
            family = resolve_family(base)
        except ArgumentError:
            raise ArgumentError(f"método desconocido: {text!r}") from None
        short = SHORT_NAMES[family]
        return cls(f'{short}_ga' if is_ga else short, 'ga' if is_ga else 'base', family)

    @property
    def uses_ga(self):
        return self.kind in ('ga', 'stacked_ga')


# ============================================================================
# CONFIGURACIÓN RESUELTA
# ============================================================================
@dataclass(frozen=True)
class ExperimentConfig:
    """
    Configuración con todas las semillas explícitas.

    Se escribe como config.resolved.json junto a los reportes; su hash
    identifica la ejecución.
    """
    dataset: str
    seed: int
    threads: int
    output_dir: str
    nested: bool
    hard_labels: bool
    pipeline: tuple
    split: object
    plans: tuple
    learners: dict
    ga: object
    stack: object
    filter: dict
    scorer: object
    importance_runs: int

    @property
    def methods(self):
        return [MethodRef.parse(name) for name in self.pipeline]

    @property
    def protocol(self):
        return 'nested' if self.nested else 'single-ga'

    def learner(self, family):
        return self.learners[family]

    def to_dict(self):
        return {
            'dataset': self.dataset,
            'seed': self.seed,
            'threads': self.threads,
            'output_dir': self.output_dir,
            'nested': self.nested,
            'hard_labels': self.hard_labels,
            'pipeline': list(self.pipeline),
            'split': SplitPlanSerializer(self.split).data,
            'plans': [SplitPlanSerializer(plan).data for plan in self.plans],
            'learners': [self.learners[family].to_dict() for family in sorted(self.learners)],
            'ga': self.ga.to_dict(),
            'stack': self.stack.to_dict(),
            'filter': {**self.filter, 'scorer': self.scorer.to_dict()},
            'importance_runs': self.importance_runs,
        }

    def canonical_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str)

    def config_hash(self):
        """SHA-256 de la configuración resuelta sin `threads` ni `output_dir`."""
        data = self.to_dict()
        data.pop('threads')
        data.pop('output_dir')
        payload = json.dumps(data, sort_keys=True, default=str)
        return hashlib.sha256(payload.encode('utf-8')).hexdigest()


# ============================================================================
# TABLA DE REPORTE
# ============================================================================
@dataclass
class ReportTable:
    """
    Filas (método, métricas o resumen de filtro) + bloque de procedencia.

    `timing_columns` solo aparecen en la versión de texto: el cuerpo CSV no
    lleva tiempos para que dos ejecuciones iguales produzcan bytes idénticos.
    """
    title: str
    columns: list
    rows: list = field(default_factory=list)
    timing_columns: tuple = ()
    provenance: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add_row(self, **values):
        unknown = set(values) - set(self.columns)
        if unknown:
            raise ArgumentError(f"columnas desconocidas en la fila: {sorted(unknown)}")
        self.rows.append({column: values.get(column) for column in self.columns})

    @property
    def body_columns(self):
        return [c for c in self.columns if c not in self.timing_columns]
