"""
Operaciones del módulo de datos: lectura Statlog/CSV, particiones
deterministas, estandarización y aplicación de máscaras.
"""
import io
import logging
import math
import re
from pathlib import Path

import numpy as np
import pandas as pd

from core.exceptions import ArgumentError, DatasetParseError, DomainError
from core.seeds import rng_for
from .domain import STATLOG_FEATURES, Dataset, FeatureKind, FeatureMask, Scaler

logger = logging.getLogger(__name__)

STATLOG_FIELDS = 14


# ============================================================================
# LECTURA DE ARCHIVOS
# ============================================================================
def _as_text(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode('utf-8')
        except UnicodeDecodeError as exc:
            raise DatasetParseError(f"el archivo no es texto UTF-8: {exc}") from exc
    return text


def _remap_statlog_label(value, line=None):
    """Convención UCI Statlog: 1 = ausencia -> 0, 2 = presencia -> 1."""
    if value == 1.0:
        return 0
    if value == 2.0:
        return 1
    where = f"línea {line}: " if line is not None else ''
    raise DomainError(f"{where}etiqueta {value:g} fuera de {{1, 2}}")


def parse_statlog(text):
    """
    Lee el formato UCI Statlog heart.dat.

    Cada fila tiene 14 valores numéricos separados por espacios; el último es
    la clase en {1, 2}. Las líneas en blanco se ignoran.

    Args:
        text: bytes o str con el contenido del archivo

    Returns:
        Dataset: n = 13, etiquetas remapeadas {1->0, 2->1}, orden de filas preservado
    """
    text = _as_text(text)
    rows, labels = [], []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) != STATLOG_FIELDS:
            raise DatasetParseError(
                f"se esperaban {STATLOG_FIELDS} valores y hay {len(tokens)}", line=line_number
            )
        try:
            values = [float(token) for token in tokens]
        except ValueError as exc:
            raise DatasetParseError(f"valor no numérico ({exc})", line=line_number) from exc
        if not all(math.isfinite(v) for v in values):
            raise DatasetParseError("valor no finito", line=line_number)

        labels.append(_remap_statlog_label(values[-1], line=line_number))
        rows.append(values[:-1])

    if not rows:
        raise DatasetParseError("no records: el archivo no contiene registros")

    logger.debug(f"Statlog leído: {len(rows)} registros")
    return Dataset(np.array(rows), np.array(labels), STATLOG_FEATURES)


def _normalize_header(name):
    return re.sub(r'[^a-z0-9]', '', str(name).lower())


# Alias frecuentes (Cleveland/Kaggle) para los nombres de STATLOG_FEATURES
HEADER_ALIASES = {
    'cp': 'chest pain',
    'chestpaintype': 'chest pain',
    'trestbps': 'blood pressure',
    'restingbloodpressure': 'blood pressure',
    'chol': 'cholesterol',
    'serumcholesterol': 'cholesterol',
    'fbs': 'blood sugar',
    'fastingbloodsugar': 'blood sugar',
    'restecg': 'electrocardiographic',
    'ecg': 'electrocardiographic',
    'thalach': 'heart rate',
    'maxheartrate': 'heart rate',
    'exang': 'exercise-induced angina',
    'exerciseangina': 'exercise-induced angina',
    'oldpeak': 'ST depression',
    'stdepression': 'ST depression',
    'vessels': 'ca',
    'thalassemia': 'thal',
}
LABEL_HEADERS = ('class', 'target', 'label', 'num', 'heartdisease', 'presence')


def _header_lookup():
    lookup = {_normalize_header(spec.name): spec.name for spec in STATLOG_FEATURES}
    lookup.update(HEADER_ALIASES)
    return lookup


def parse_csv(text):
    """
    Lee un CSV con encabezado equivalente a heart.dat.

    Los encabezados se comparan sin distinguir mayúsculas (ignorando espacios,
    guiones y guiones bajos) contra los nombres de STATLOG_FEATURES y sus alias.
    La columna de clase acepta {1, 2} (convención Statlog) o {0, 1}.
    """
    text = _as_text(text)
    if not text.strip():
        raise DatasetParseError("no records: el archivo no contiene registros")
    try:
        frame = pd.read_csv(io.StringIO(text), skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise DatasetParseError(f"CSV ilegible: {exc}") from exc
    if frame.empty:
        raise DatasetParseError("no records: el archivo no contiene registros")

    lookup = _header_lookup()
    feature_columns, label_column = {}, None
    for column in frame.columns:
        key = _normalize_header(column)
        if key in LABEL_HEADERS:
            label_column = column
        elif key in lookup:
            feature_columns[lookup[key]] = column

    missing = [spec.name for spec in STATLOG_FEATURES if spec.name not in feature_columns]
    if missing:
        raise DatasetParseError(f"faltan columnas: {missing}. Encontradas: {list(frame.columns)}")
    if label_column is None:
        raise DatasetParseError(f"no hay columna de clase. Encontradas: {list(frame.columns)}")

    ordered = [feature_columns[spec.name] for spec in STATLOG_FEATURES]
    block = frame[ordered + [label_column]]
    if block.isna().any().any():
        # +2: encabezado y numeración 1-based
        first_bad = int(np.flatnonzero(block.isna().any(axis=1).to_numpy())[0]) + 2
        raise DatasetParseError("valor faltante", line=first_bad)
    try:
        values = block.astype(float).to_numpy()
    except ValueError as exc:
        raise DatasetParseError(f"valor no numérico ({exc})") from exc

    raw_labels = values[:, -1]
    observed = set(np.unique(raw_labels).tolist())
    if observed <= {1.0, 2.0}:
        labels = np.array([_remap_statlog_label(v) for v in raw_labels])
    elif observed <= {0.0, 1.0}:
        labels = raw_labels.astype(np.int64)
    else:
        raise DomainError(f"etiquetas fuera de {{1, 2}} / {{0, 1}}: {sorted(observed)}")

    return Dataset(values[:, :-1], labels, STATLOG_FEATURES)


def load_dataset(path):
    """Lee un archivo eligiendo el lector por extensión (.csv o formato Statlog)."""
    path = Path(path)
    content = path.read_bytes()
    if path.suffix.lower() == '.csv':
        ds = parse_csv(content)
    else:
        ds = parse_statlog(content)
    negatives, positives = ds.class_counts()
    logger.info(f"Dataset {path.name}: m={ds.m}, n={ds.n}, clases 0/1 = {negatives}/{positives}")
    return ds


# ============================================================================
# PARTICIONES
# ============================================================================
def _stratified_quotas(labels, train_size):
    """
    Cupos de entrenamiento por clase que suman exactamente `train_size`
    (piso de la parte proporcional + restos mayores).
    """
    classes, counts = np.unique(labels, return_counts=True)
    ideal = counts * (train_size / counts.sum())
    quotas = np.floor(ideal).astype(int)
    remainder = train_size - quotas.sum()
    # mayor parte fraccionaria primero; empate -> clase menor
    order = sorted(range(len(classes)), key=lambda c: (-(ideal[c] - quotas[c]), c))
    for c in order:
        if remainder <= 0:
            break
        if quotas[c] < counts[c]:
            quotas[c] += 1
            remainder -= 1
    return dict(zip(classes.tolist(), quotas.tolist()))


def holdout_split(ds, fraction, seed, stratified=True):
    """
    Partición holdout determinista.

    Entrenamiento = ⌊fraction·m⌋ registros (202/68 para 270 a 0.75). Con
    estratificación los cupos por clase suman ese mismo tamaño.

    Returns:
        tuple: (train, test)
    """
    if not 0.0 < fraction < 1.0:
        raise ArgumentError(f"la fracción debe estar en (0, 1), recibido {fraction}")
    if ds.m < 2:
        raise ArgumentError("holdout requiere al menos 2 registros")
    train_size = int(math.floor(fraction * ds.m))
    if train_size == 0 or train_size == ds.m:
        raise ArgumentError(
            f"fracción {fraction} con m = {ds.m} deja una partición vacía"
        )

    rng = rng_for(seed)
    labels = ds.labels
    if stratified:
        quotas = _stratified_quotas(labels, train_size)
        train_parts = []
        for cls, quota in sorted(quotas.items()):
            members = rng.permutation(np.flatnonzero(labels == cls))
            train_parts.append(members[:quota])
        train_idx = np.sort(np.concatenate(train_parts))
    else:
        train_idx = np.sort(rng.permutation(ds.m)[:train_size])

    test_idx = np.setdiff1d(np.arange(ds.m), train_idx)
    return ds.subset(train_idx, role='train'), ds.subset(test_idx, role='test')


def fold_assignment(ds, k, stratified=True, seed=0):
    """
    Fold (0..k-1) de cada registro.

    Los registros se reparten en rueda sobre una permutación sembrada; con
    estratificación la permutación se arma clase por clase, así cada fold
    recibe ⌊m_c/k⌋ o ⌈m_c/k⌉ registros de cada clase.
    """
    if k < 2 or k > ds.m:
        raise ArgumentError(f"k debe cumplir 2 ≤ k ≤ m = {ds.m}, recibido {k}")
    rng = rng_for(seed)
    if stratified:
        labels = ds.labels
        order = np.concatenate([
            rng.permutation(np.flatnonzero(labels == cls)) for cls in np.unique(labels)
        ])
    else:
        order = rng.permutation(ds.m)
    folds = np.empty(ds.m, dtype=np.int64)
    folds[order] = np.arange(ds.m) % k
    return folds


def kfold_split(ds, k, stratified=True, seed=0):
    """
    Validación cruzada k-fold determinista.

    Returns:
        list: k tuplas (train, test); cada registro cae en exactamente un test
    """
    folds = fold_assignment(ds, k, stratified=stratified, seed=seed)
    pairs = []
    for fold in range(k):
        test_idx = np.flatnonzero(folds == fold)
        train_idx = np.flatnonzero(folds != fold)
        pairs.append((ds.subset(train_idx, role='train'), ds.subset(test_idx, role='test')))
    return pairs


def split(ds, plan):
    """Lista de pares (train, test) según un SplitPlan (holdout -> un único par)."""
    if plan.kind == 'holdout':
        return [holdout_split(ds, plan.fraction, plan.seed, stratified=plan.stratified)]
    return kfold_split(ds, plan.k, stratified=plan.stratified, seed=plan.seed)


# ============================================================================
# ESTANDARIZACIÓN
# ============================================================================
SCALED_KINDS = (FeatureKind.CONTINUOUS, FeatureKind.ORDINAL)


def fit_scaler(train):
    """
    Ajusta medias y desviaciones poblacionales con la partición de entrenamiento.
    Una columna constante queda con desviación 0 aunque el redondeo diga otra cosa.
    """
    X = train.features
    scaled = np.array([spec.kind in SCALED_KINDS for spec in train.specs], dtype=bool)
    stds = np.where(np.ptp(X, axis=0) == 0, 0.0, X.std(axis=0))
    return Scaler(means=X.mean(axis=0), stds=stds, scaled=scaled)


def apply_scaler(scaler, ds):
    """
    (x - media) / desviación en las columnas escalables; desviación 0 -> 0.
    Nunca cambia m, n, etiquetas ni especificaciones.
    """
    if ds.n != scaler.n:
        raise ArgumentError(f"el scaler se ajustó con n = {scaler.n} y el dataset tiene n = {ds.n}")
    X = np.array(ds.features, dtype=float)
    for j in np.flatnonzero(scaler.scaled):
        if scaler.stds[j] > 0:
            X[:, j] = (X[:, j] - scaler.means[j]) / scaler.stds[j]
        else:
            X[:, j] = 0.0
    return ds.with_features(X)


def scale_pair(train, test):
    """Ajusta con `train` y transforma ambos."""
    scaler = fit_scaler(train)
    return apply_scaler(scaler, train), apply_scaler(scaler, test)


# ============================================================================
# MÁSCARAS
# ============================================================================
def apply_mask(ds, mask):
    """Conserva solo las columnas seleccionadas, en su orden relativo original."""
    if not isinstance(mask, FeatureMask):
        mask = FeatureMask.from_array(mask)
    if mask.n != ds.n:
        raise ArgumentError(f"máscara de longitud {mask.n} para un dataset con n = {ds.n}")
    columns = mask.indices
    return ds.with_features(ds.features[:, columns], [ds.specs[j] for j in columns])
