"""
Selección de características por filtro: discretización, medidas de
información (base 2), FCBF y ReliefF.
"""
import logging
import time

import numpy as np

from core.exceptions import ArgumentError, EmptySelectionError
from core.parallel import ordered_map
from core.seeds import rng_for
from dataset.domain import FeatureKind, FeatureMask
from dataset.services import apply_mask
from learners.domain import MaskedPredictor
from learners.services import default_spec, evaluate_with, fit
from .domain import FeatureWeights, FilterEvaluation, FilterResult

logger = logging.getLogger(__name__)

DEFAULT_BINS = 10
DEFAULT_RELIEF_K = 10


# ============================================================================
# DISCRETIZACIÓN Y MEDIDAS DE INFORMACIÓN
# ============================================================================
def discretize(column, bins):
    """
    Discretización de igual frecuencia.

    Cada posición del vector ordenado cae en el bin ⌊i·bins/m⌋; un valor
    repetido toma el bin de su primera aparición (empates al bin inferior).
    Columna constante -> todo 0.
    """
    column = np.asarray(column, dtype=float).reshape(-1)
    if bins < 2:
        raise ArgumentError(f"bins debe ser ≥ 2, recibido {bins}")
    if column.size < bins:
        raise ArgumentError(f"la columna tiene {column.size} valores y se pidieron {bins} bins")
    if column.min() == column.max():
        return np.zeros(column.size, dtype=np.int64)
    ordered = np.sort(column, kind='stable')
    position_bins = (np.arange(column.size) * bins) // column.size
    return position_bins[np.searchsorted(ordered, column, side='left')].astype(np.int64)


def _check_lengths(a, b):
    if a.shape != b.shape:
        raise ArgumentError(f"longitudes distintas: {a.size} vs {b.size}")
    if a.size < 1:
        raise ArgumentError("se necesita al menos un valor")


def _entropy_from_counts(counts):
    p = counts / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def entropy(v):
    """Entropía en bits (0·log 0 = 0)."""
    v = np.asarray(v).reshape(-1)
    if v.size < 1:
        raise ArgumentError("se necesita al menos un valor")
    _, counts = np.unique(v, return_counts=True)
    return _entropy_from_counts(counts)


def joint_entropy(a, b):
    a = np.asarray(a).reshape(-1)
    b = np.asarray(b).reshape(-1)
    _check_lengths(a, b)
    _, counts = np.unique(np.column_stack([a, b]), axis=0, return_counts=True)
    return _entropy_from_counts(counts)


def mutual_information(a, b):
    """I(a; b) = H(a) + H(b) - H(a, b), recortada a ≥ 0."""
    return max(0.0, entropy(a) + entropy(b) - joint_entropy(a, b))


def symmetric_uncertainty(a, b):
    """SU = 2·I(a; b) / (H(a) + H(b)); 0 si ambas son constantes."""
    denominator = entropy(a) + entropy(b)
    if denominator == 0.0:
        return 0.0
    return min(1.0, 2.0 * mutual_information(a, b) / denominator)


def discrete_codes(ds, bins=DEFAULT_BINS):
    """
    Columnas como códigos enteros: las continuas se discretizan y las
    discretas se recodifican 0..k-1 según sus valores.
    """
    bins = min(bins, ds.m)
    columns = []
    for j, spec in enumerate(ds.specs):
        column = ds.features[:, j]
        if spec.kind == FeatureKind.CONTINUOUS and bins >= 2:
            columns.append(discretize(column, bins))
        else:
            columns.append(np.unique(column, return_inverse=True)[1].astype(np.int64))
    return np.column_stack(columns)


def _ordering(weights, selected):
    ranked = sorted(range(len(weights)), key=lambda j: (-weights[j], j))
    chosen = set(selected)
    return tuple([j for j in ranked if j in chosen] + [j for j in ranked if j not in chosen])


# ============================================================================
# FCBF
# ============================================================================
def fcbf(ds, delta=0.0, bins=DEFAULT_BINS):
    """
    Fast Correlation-Based Filter.

    1. SU(f, clase) para cada característica; se conservan las que superan
       `delta`, ordenadas de mayor a menor (empate -> menor índice).
    2. Recorriendo ese orden, cada sobreviviente f_i elimina a toda f_j de
       menor rango con SU(f_i, f_j) ≥ SU(f_j, clase).

    Raises:
        EmptySelectionError: si `delta` descarta todas las características
    """
    if delta < 0:
        raise ArgumentError(f"delta debe ser ≥ 0, recibido {delta}")
    started = time.perf_counter()
    codes = discrete_codes(ds, bins)
    y = ds.labels
    relevance = np.array([symmetric_uncertainty(codes[:, j], y) for j in range(ds.n)])

    ranking = sorted((j for j in range(ds.n) if relevance[j] > delta), key=lambda j: (-relevance[j], j))
    if not ranking:
        raise EmptySelectionError(
            f"FCBF con delta={delta} no conservó ninguna característica; pruebe un delta menor"
        )

    removed = set()
    for position, predominant in enumerate(ranking):
        if predominant in removed:
            continue
        for candidate in ranking[position + 1:]:
            if candidate in removed:
                continue
            if symmetric_uncertainty(codes[:, predominant], codes[:, candidate]) >= relevance[candidate]:
                removed.add(candidate)
    survivors = [j for j in ranking if j not in removed]

    elapsed = (time.perf_counter() - started) * 1000.0
    logger.info(f"FCBF: {len(survivors)}/{ds.n} características en {elapsed:.1f} ms")
    return FilterResult(
        mask=FeatureMask.from_indices(survivors, ds.n),
        weights=FeatureWeights(relevance, 'fcbf', elapsed),
        ordering=_ordering(relevance, survivors),
    )


# ============================================================================
# RELIEF-F
# ============================================================================
class _ReliefDiffs:
    """diff(f, a, b): |a-b|/rango en continuas y ordinales; 0/1 en binarias y nominales."""

    def __init__(self, ds):
        X = ds.features
        self.X = X
        ranges = X.max(axis=0) - X.min(axis=0)
        self.scale = np.where(ranges > 0, ranges, 1.0)
        self.indicator = np.array([spec.kind in (FeatureKind.BINARY, FeatureKind.NOMINAL) for spec in ds.specs])

    def from_row(self, i):
        delta = np.abs(self.X - self.X[i])
        return np.where(self.indicator, (delta > 0).astype(float), delta / self.scale)


def relief(ds, iterations=None, k=DEFAULT_RELIEF_K, seed=0, top_q=None, threads=1):
    """
    ReliefF con k vecinos más cercanos por clase (distancia Manhattan sobre diffs).

    Se muestrean `iterations` registros (por defecto m, cada uno una vez en
    orden sembrado). Selección: peso > 0, o las `top_q` de mayor peso.
    Si una clase no alcanza k vecinos, k se reduce y el resultado lleva aviso.
    """
    if k < 1:
        raise ArgumentError(f"k debe ser ≥ 1, recibido {k}")
    if top_q is not None and not 1 <= top_q <= ds.n:
        raise ArgumentError(f"top_q debe estar en [1, {ds.n}], recibido {top_q}")
    y = ds.labels
    if np.unique(y).size < 2:
        raise ArgumentError("Relief necesita registros de ambas clases")
    iterations = ds.m if iterations is None else int(iterations)
    if iterations < 1:
        raise ArgumentError(f"iterations debe ser ≥ 1, recibido {iterations}")

    started = time.perf_counter()
    rng = rng_for(seed)
    order = rng.permutation(ds.m)
    if iterations <= ds.m:
        sampled = order[:iterations]
    else:
        sampled = np.concatenate([order, rng.integers(0, ds.m, size=iterations - ds.m)])

    class_sizes = {c: int(np.sum(y == c)) for c in (0, 1)}
    k_hit = {c: min(k, class_sizes[c] - 1) for c in (0, 1)}
    k_miss = {c: min(k, class_sizes[1 - c]) for c in (0, 1)}
    warning = None
    if min(*k_hit.values(), *k_miss.values()) < k:
        warning = f"k reducido de {k} a {min(*k_hit.values(), *k_miss.values())} por tamaño de clase"
        logger.warning(f"Relief: {warning}")

    diffs = _ReliefDiffs(ds)

    def contribution(i):
        row_diffs = diffs.from_row(i)
        distance = row_diffs.sum(axis=1)
        distance[i] = np.inf
        nearest = np.argsort(distance, kind='stable')
        label = y[i]
        hits = [j for j in nearest if y[j] == label and j != i][:k_hit[label]]
        misses = [j for j in nearest if y[j] != label][:k_miss[label]]
        delta = np.zeros(ds.n)
        if misses:
            delta += row_diffs[misses].sum(axis=0) / len(misses)
        if hits:
            delta -= row_diffs[hits].sum(axis=0) / len(hits)
        return delta

    # suma en orden de muestreo, independiente del número de hilos
    weights = np.zeros(ds.n)
    for delta in ordered_map(contribution, sampled.tolist(), threads):
        weights += delta
    weights /= iterations

    if top_q is not None:
        selected = sorted(range(ds.n), key=lambda j: (-weights[j], j))[:top_q]
    else:
        selected = [j for j in range(ds.n) if weights[j] > 0]
    if not selected:
        raise EmptySelectionError("Relief no encontró características con peso positivo; use top_q")

    elapsed = (time.perf_counter() - started) * 1000.0
    logger.info(f"Relief: {len(selected)}/{ds.n} características en {elapsed:.1f} ms")
    return FilterResult(
        mask=FeatureMask.from_indices(selected, ds.n),
        weights=FeatureWeights(weights, 'relief', elapsed),
        ordering=_ordering(weights, selected),
        warning=warning,
    )


# ============================================================================
# DESPACHO Y EXACTITUD DEL FILTRO
# ============================================================================
FILTERS = ('relief', 'fcbf')


def run_filter(method, ds, params=None, seed=0, threads=1):
    """
    Ejecuta `relief` o `fcbf` con un diccionario de parámetros.

    params: delta/bins (fcbf); iterations/k/top_q (relief)
    """
    params = dict(params or {})
    if method == 'fcbf':
        return fcbf(ds, delta=params.get('delta', 0.0), bins=params.get('bins', DEFAULT_BINS))
    if method == 'relief':
        return relief(
            ds,
            iterations=params.get('iterations'),
            k=params.get('k', DEFAULT_RELIEF_K),
            seed=seed,
            top_q=params.get('top_q'),
            threads=threads,
        )
    raise ArgumentError(f"filtro desconocido: {method!r} (opciones: {FILTERS})")


def evaluate_filter(method, ds, plan, params=None, scorer=None, seed=0, threads=1):
    """
    Filtro sobre todo el dataset (características reportadas) y exactitud
    del clasificador evaluador sobre las características filtradas.

    En cada partición el filtro se vuelve a ejecutar solo con los datos de
    entrenamiento; nunca ve el fold de prueba.
    """
    scorer = scorer or default_spec('cart', seed)
    result = run_filter(method, ds, params, seed=seed, threads=threads)

    def fit_filtered(train):
        mask = run_filter(method, train, params, seed=seed, threads=threads).mask
        return MaskedPredictor(mask, fit(scorer, apply_mask(train, mask), threads=threads))

    evaluation = evaluate_with(fit_filtered, ds, plan)
    logger.info(
        f"Filtro {method}: {result.mask.popcount} características, "
        f"accuracy {scorer.family} {plan.label} = {evaluation.report.accuracy:.4f}"
    )
    return FilterEvaluation(result=result, report=evaluation.report, scorer=scorer, plan=plan)
