"""
Orquestación de experimentos: carga y resolución de la configuración,
evaluación de cada método y armado de las tablas de reporte.

Todas las semillas internas se derivan de la semilla maestra salvo que la
configuración las fije; la configuración resuelta determina por completo
los números reportados.
"""
import json
import logging
import time
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path

import numpy as np
from django.conf import settings
from django.utils import timezone

from core.exceptions import ConfigError, StackGAError, StageError
from core.seeds import derive_seed
from dataset.serializers import SplitPlanSerializer
from dataset.services import apply_mask, load_dataset
from filter_fs.services import evaluate_filter
from ga_wrapper.serializers import GAConfigSerializer
from ga_wrapper.services import evolve, selection_frequency
from learners.domain import FAMILIES, MaskedPredictor
from learners.serializers import ClassifierSpecSerializer
from learners.services import default_spec, evaluate_with, fit, fitter
from metrics.domain import METRIC_NAMES
from stacking.serializers import StackSpecSerializer
from stacking.services import default_stack_spec, fit_stack, stacked_ga
from .domain import ExperimentConfig, MethodRef, ReportTable
from .references import PUBLISHED_FILTERS, REFERENCE_NOTE, reference_accuracy, reference_triple
from .reports import format_number, format_percent
from .serializers import ExperimentConfigSerializer

logger = logging.getLogger(__name__)

# Características cuyo liderazgo evalúa el reporte de importancia
HIGHLIGHTED_FEATURES = ('thal', 'ca')


# ============================================================================
# CONFIGURACIÓN
# ============================================================================
def parse_override(text):
    """
    'ga.population_size=50' -> (['ga', 'population_size'], 50).

    El valor se interpreta como JSON si es posible; si no, queda como texto.
    """
    if '=' not in text:
        raise ConfigError(f"override inválido {text!r}: use clave.subclave=valor")
    path, raw = text.split('=', 1)
    keys = [key for key in path.strip().split('.') if key]
    if not keys:
        raise ConfigError(f"override sin clave: {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return keys, value


def apply_overrides(document, overrides):
    """Aplica overrides con ruta punteada sobre una copia del documento."""
    document = json.loads(json.dumps(document))
    for text in overrides or ():
        keys, value = parse_override(text)
        target = document
        for key in keys[:-1]:
            node = target.setdefault(key, {})
            if not isinstance(node, dict):
                raise ConfigError(f"override {text!r}: '{key}' no es un objeto")
            target = node
        target[keys[-1]] = value
    return document


def read_config_document(path):
    """Lee un documento JSON de configuración (o {} si `path` es None)."""
    if path is None:
        return {}
    try:
        document = json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as exc:
        raise ConfigError(f"no se pudo leer la configuración {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON inválido en {path}: línea {exc.lineno}: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise ConfigError("la configuración debe ser un objeto JSON")
    return document


def resolve_config(document):
    """
    Valida el documento y devuelve un ExperimentConfig con todas las
    semillas explícitas.

    Raises:
        ConfigError: con los errores por campo tal como los reporta DRF
    """
    serializer = ExperimentConfigSerializer(data=document)
    if not serializer.is_valid():
        raise ConfigError("configuración inválida", errors=serializer.errors)
    data = serializer.validated_data
    master = data['seed']
    stack_cfg = settings.STACKGA

    def plan_from(item):
        label = item['kind'] if item['kind'] == 'holdout' else f"k{item['k']}"
        return SplitPlanSerializer(context={'default_seed': derive_seed(master, 'split', label)}).create(item)

    learners = {family: default_spec(family, derive_seed(master, 'learner', family)) for family in FAMILIES}
    for item in data['learners']:
        seed = derive_seed(master, 'learner', item['family'])
        learners[item['family']] = ClassifierSpecSerializer(context={'default_seed': seed}).create(item)

    ga = GAConfigSerializer(context={'default_seed': derive_seed(master, 'ga')}).create(data['ga'])

    if data['stack'] is None:
        stack = default_stack_spec(derive_seed(master, 'stack'))
    else:
        stack = StackSpecSerializer(context={'default_seed': derive_seed(master, 'stack')}).create(data['stack'])
    if data['hard_labels']:
        stack = replace(stack, hard_labels=True)

    filter_settings = dict(data['filter'])
    scorer_data = filter_settings.pop('scorer', None)
    if scorer_data is None:
        scorer = default_spec('cart', derive_seed(master, 'filter', 'scorer'))
    else:
        scorer = ClassifierSpecSerializer(
            context={'default_seed': derive_seed(master, 'filter', 'scorer')},
        ).create(scorer_data)
    filter_settings['seed'] = derive_seed(master, 'filter')

    return ExperimentConfig(
        dataset=data['dataset'] or stack_cfg['STATLOG_PATH'],
        seed=master,
        threads=data['threads'] or stack_cfg['THREADS'],
        output_dir=data['output_dir'] or stack_cfg['OUTPUT_DIR'],
        nested=data['nested'],
        hard_labels=data['hard_labels'],
        pipeline=tuple(data['pipeline']),
        split=plan_from(data['split']),
        plans=tuple(plan_from(item) for item in data['plans']),
        learners=learners,
        ga=ga,
        stack=stack,
        filter=filter_settings,
        scorer=scorer,
        importance_runs=data['importance_runs'],
    )


def load_config(path=None, overrides=(), **flags):
    """
    Documento JSON + overrides punteados + atajos de la CLI (seed, threads,
    output_dir, nested, hard_labels; None = no sobrescribir).
    """
    document = apply_overrides(read_config_document(path), overrides)
    for key, value in flags.items():
        if value is not None:
            document[key] = value
    return resolve_config(document)


# ============================================================================
# EVALUACIÓN POR MÉTODO
# ============================================================================
@contextmanager
def stage(name):
    """Envuelve los errores de ejecución con el nombre de la etapa."""
    try:
        yield
    except StageError:
        raise
    except StackGAError as exc:
        logger.error(f"La etapa '{name}' falló: {exc.message}")
        raise StageError(name, exc) from exc


class MethodOutcome:
    """Reporte de un método sobre un plan + datos de la fila."""

    def __init__(self, method, plan, report, features, protocol, elapsed_ms, masks=()):
        self.method = method
        self.plan = plan
        self.report = report
        self.features = features
        self.protocol = protocol
        self.elapsed_ms = elapsed_ms
        self.masks = list(masks)


def _ga_fit(config, method, masks):
    """fit_fn que corre el AG sobre cada partición de entrenamiento (protocolo anidado)."""
    threads = config.threads

    def fit_nested(train):
        if method.kind == 'ga':
            result = evolve(config.ga, config.learner(method.family), train, threads=threads)
            model = fit(config.learner(method.family), apply_mask(train, result.best_mask))
        else:
            result, model = stacked_ga(config.stack, config.ga, train, threads=threads)
        masks.append(result.best_mask)
        return MaskedPredictor(result.best_mask, model)

    return fit_nested


def _select_once(config, method, ds):
    """Protocolo de AG único: la selección ve todo el dataset antes de evaluar."""
    if method.kind == 'ga':
        return evolve(config.ga, config.learner(method.family), ds, threads=config.threads).best_mask
    return stacked_ga(config.stack, config.ga, ds, threads=config.threads)[0].best_mask


def evaluate_method(config, method, ds, plan):
    """
    Evalúa un método (no filtro) con un SplitPlan.

    Protocolos de los métodos con AG:
        nested: el AG se repite dentro de cada partición de entrenamiento
        single-ga: un AG sobre todo el dataset y luego evaluación con la máscara
    """
    started = time.perf_counter()
    threads = config.threads
    protocol = 'directo'
    masks = []

    if method.kind == 'base':
        evaluation = evaluate_with(fitter(config.learner(method.family), threads), ds, plan)
    elif method.kind == 'stack':
        evaluation = evaluate_with(lambda train: fit_stack(config.stack, train, threads), ds, plan)
    elif config.nested:
        protocol = 'nested'
        evaluation = evaluate_with(_ga_fit(config, method, masks), ds, plan)
    else:
        protocol = 'single-ga'
        mask = _select_once(config, method, ds)
        masks.append(mask)
        masked = apply_mask(ds, mask)
        if method.kind == 'ga':
            evaluation = evaluate_with(fitter(config.learner(method.family), threads), masked, plan)
        else:
            evaluation = evaluate_with(lambda train: fit_stack(config.stack, train, threads), masked, plan)

    features = float(np.mean([m.popcount for m in masks])) if masks else ds.n
    elapsed = (time.perf_counter() - started) * 1000.0
    logger.info(f"{method.name} [{plan.label}, {protocol}]: accuracy={evaluation.report.accuracy:.4f}")
    return MethodOutcome(method, plan, evaluation.report, features, protocol, elapsed, masks)


def _features_cell(value):
    if isinstance(value, float) and not value.is_integer():
        return format_number(value)
    return str(int(value))


# ============================================================================
# TABLAS
# ============================================================================
RUN_COLUMNS = ['method', 'plan', 'protocol', 'features', *METRIC_NAMES, 'ref_accuracy', 'elapsed_ms']


def _provenance(config, started_at, started, **extra):
    return {
        'config_hash': config.config_hash(),
        'seed': config.seed,
        'dataset': str(config.dataset),
        'protocol': config.protocol,
        'started_at': started_at.isoformat(),
        'elapsed_ms': round((time.perf_counter() - started) * 1000.0, 1),
        'note': REFERENCE_NOTE,
        **extra,
    }


def _filter_row(table, config, method, ds, plan):
    evaluation = evaluate_filter(
        method.name, ds, plan,
        params=config.filter, scorer=config.scorer, seed=config.filter['seed'], threads=config.threads,
    )
    result = evaluation.result
    table.add_row(
        method=method.name,
        plan=plan.label,
        protocol=f"filtro (evaluador {config.scorer.short_name})",
        features=str(result.mask.popcount),
        **{name: format_percent(getattr(evaluation.report, name)) for name in METRIC_NAMES},
        ref_accuracy=format_number(reference_accuracy(method.name)),
        elapsed_ms=format_number(round(result.elapsed_ms, 1)),
    )
    if result.warning:
        table.notes.append(f"{method.name}: {result.warning}")


def run_experiment(config, ds=None):
    """
    Ejecuta cada método del pipeline con el plan `split` de la configuración.

    Returns:
        ReportTable con una fila por método, en el orden de la configuración
    """
    started_at, started = timezone.now(), time.perf_counter()
    if ds is None:
        ds = load_dataset(config.dataset)
    table = ReportTable(
        title=f"Resultados ({config.split.label}, semilla {config.seed})",
        columns=list(RUN_COLUMNS),
        timing_columns=('elapsed_ms',),
    )
    timings = {}
    for method in config.methods:
        with stage(method.name):
            if method.kind == 'filter':
                _filter_row(table, config, method, ds, config.split)
                continue
            outcome = evaluate_method(config, method, ds, config.split)
        timings[method.name] = round(outcome.elapsed_ms, 1)
        table.add_row(
            method=method.name,
            plan=config.split.label,
            protocol=outcome.protocol,
            features=_features_cell(outcome.features),
            **{name: format_percent(getattr(outcome.report, name)) for name in METRIC_NAMES},
            ref_accuracy=format_number(reference_accuracy(method.name, config.split.label)),
            elapsed_ms=format_number(timings[method.name]),
        )
    table.provenance = _provenance(config, started_at, started, timings_ms=timings)
    return table


def run_matrix(config, ds=None):
    """
    Grilla métodos x planes con (ACC, Sen, Spec) por plan y la exactitud
    publicada al lado.
    """
    started_at, started = timezone.now(), time.perf_counter()
    if ds is None:
        ds = load_dataset(config.dataset)
    columns = ['method', 'protocol']
    for plan in config.plans:
        columns += [f'{plan.label}_acc', f'{plan.label}_sen', f'{plan.label}_spec', f'{plan.label}_ref_acc']
    table = ReportTable(title=f"Holdout y validación cruzada (semilla {config.seed})", columns=columns)

    for method in config.methods:
        row = {'method': method.name}
        for plan in config.plans:
            with stage(f'{method.name}/{plan.label}'):
                if method.kind == 'filter':
                    report = evaluate_filter(
                        method.name, ds, plan, params=config.filter, scorer=config.scorer,
                        seed=config.filter['seed'], threads=config.threads,
                    ).report
                    row['protocol'] = f"filtro (evaluador {config.scorer.short_name})"
                else:
                    outcome = evaluate_method(config, method, ds, plan)
                    report = outcome.report
                    row['protocol'] = outcome.protocol
            triple = reference_triple(method.name, plan.label)
            row[f'{plan.label}_acc'] = format_percent(report.accuracy)
            row[f'{plan.label}_sen'] = format_percent(report.sensitivity)
            row[f'{plan.label}_spec'] = format_percent(report.specificity)
            row[f'{plan.label}_ref_acc'] = format_number(triple[0]) if triple else ''
        table.add_row(**row)

    table.notes.append(REFERENCE_NOTE)
    table.provenance = _provenance(config, started_at, started, plans=[p.label for p in config.plans])
    return table


FILTER_COLUMNS = ['method', 'plan', 'scorer', 'selected_features', 'selected', 'accuracy',
                  'ref_selected', 'ref_accuracy', 'warning', 'elapsed_ms']


def run_filter_table(config, method_name, ds=None):
    """Fila con la forma de la tabla de filtros: tiempo, características, exactitud."""
    started_at, started = timezone.now(), time.perf_counter()
    method = MethodRef.parse(method_name)
    if ds is None:
        ds = load_dataset(config.dataset)
    with stage(method.name):
        evaluation = evaluate_filter(
            method.name, ds, config.split, params=config.filter, scorer=config.scorer,
            seed=config.filter['seed'], threads=config.threads,
        )
    result = evaluation.result
    published = PUBLISHED_FILTERS.get(method.name, {})
    table = ReportTable(
        title=f"Filtro {method.name} ({config.split.label}, semilla {config.seed})",
        columns=list(FILTER_COLUMNS),
        timing_columns=('elapsed_ms',),
    )
    table.add_row(
        method=method.name,
        plan=config.split.label,
        scorer=config.scorer.short_name,
        selected_features=str(result.mask.popcount),
        selected=' '.join(ds.feature_names[j] for j in result.selected),
        accuracy=format_percent(evaluation.report.accuracy),
        ref_selected=format_number(published.get('selected')),
        ref_accuracy=format_number(published.get('accuracy')),
        warning=result.warning or '',
        elapsed_ms=format_number(round(result.elapsed_ms, 1)),
    )
    table.provenance = _provenance(
        config, started_at, started,
        weights=[round(float(w), 6) for w in result.weights.weights],
    )
    return table


IMPORTANCE_COLUMNS = ['rank', 'index', 'feature', 'frequency']


def importance_verdict(names, frequency, highlighted=HIGHLIGHTED_FEATURES):
    """
    ¿Las características destacadas ocupan los primeros puestos de frecuencia?
    Un empate con el último puesto cuenta como dentro.
    """
    positions = {name: i for i, name in enumerate(names)}
    missing = [name for name in highlighted if name not in positions]
    if missing:
        return False, f"características no presentes en el dataset: {missing}"
    cutoff = sorted(frequency, reverse=True)[len(highlighted) - 1]
    leads = all(frequency[positions[name]] >= cutoff for name in highlighted)
    shown = ', '.join(f"{name}={format_percent(frequency[positions[name]])}%" for name in highlighted)
    verb = 'lideran' if leads else 'no lideran'
    return leads, f"{' y '.join(highlighted)} {verb} la frecuencia de selección ({shown})"


def run_importance(config, runs=None, ds=None):
    """
    Frecuencia de selección de cada característica en `runs` ejecuciones
    sembradas de Stacked-GA sobre el dataset completo.
    """
    started_at, started = timezone.now(), time.perf_counter()
    runs = runs or config.importance_runs
    if ds is None:
        ds = load_dataset(config.dataset)
    results = []
    for run in range(runs):
        with stage(f'stacked_ga/{run}'):
            ga = config.ga.with_seed(derive_seed(config.seed, 'importance', run))
            result, _ = stacked_ga(config.stack, ga, ds, threads=config.threads)
        results.append(result)
        logger.info(f"Importancia {run + 1}/{runs}: {result.best_mask}")
    frequency = selection_frequency(results)

    table = ReportTable(title=f"Frecuencia de selección ({runs} ejecuciones)", columns=list(IMPORTANCE_COLUMNS))
    order = sorted(range(ds.n), key=lambda j: (-frequency[j], j))
    for rank, j in enumerate(order, start=1):
        table.add_row(rank=str(rank), index=str(j), feature=ds.feature_names[j], frequency=format_percent(frequency[j]))
    leads, verdict = importance_verdict(ds.feature_names, frequency)
    table.notes.append(verdict)
    table.provenance = _provenance(config, started_at, started, runs=runs, highlighted_lead=leads)
    return table
