"""
Algoritmo genético wrapper sobre máscaras de características.

`run_ga` es genérico: recibe una función máscara -> FitnessRecord. `evolve`
la instancia con la exactitud de validación cruzada de un clasificador y
`stacking.services.stacked_ga` con la del ensamble apilado.
"""
import itertools
import logging
import threading

import numpy as np

from core.exceptions import ArgumentError
from core.parallel import ordered_map
from core.seeds import rng_for
from dataset.domain import FeatureMask
from dataset.services import apply_mask
from learners.services import cross_val_accuracies, fitter
from .domain import FitnessRecord, GAResult

logger = logging.getLogger(__name__)


# ============================================================================
# APTITUD
# ============================================================================
class FitnessCache:
    """
    Memoización de aptitudes por máscara, segura entre hilos.

    Si dos hilos calculan la misma máscara a la vez, gana el primero en
    insertar; ambos valores son idénticos porque la evaluación es determinista.
    """

    def __init__(self, evaluator):
        self.evaluator = evaluator
        self._lock = threading.Lock()
        self._store = {}

    def __call__(self, mask):
        key = mask.key()
        with self._lock:
            if key in self._store:
                return self._store[key]
        record = self.evaluator(mask)
        with self._lock:
            return self._store.setdefault(key, record)

    def __len__(self):
        with self._lock:
            return len(self._store)


def penalized(accuracies, failed, popcount, n, alpha):
    accuracy = float(np.mean(accuracies))
    return FitnessRecord(
        fitness=accuracy - alpha * (popcount / n),
        accuracy=accuracy,
        failed_folds=failed,
    )


class LearnerFitness:
    """
    Aptitud de una máscara para un clasificador: exactitud media de una
    validación cruzada interna sobre `train` restringido a la máscara, menos
    alpha · (bits activos / n).
    """

    def __init__(self, learner, train, folds, seed, alpha=0.0):
        self.learner = learner
        self.train = train
        self.folds = folds
        self.seed = seed
        self.alpha = alpha

    def __call__(self, mask):
        masked = apply_mask(self.train, mask)
        accuracies, failed = cross_val_accuracies(fitter(self.learner), masked, self.folds, self.seed)
        return penalized(accuracies, failed, mask.popcount, mask.n, self.alpha)


def fitness(mask, learner, train, folds, seed, alpha=0.0):
    """Aptitud de una sola máscara (sin caché)."""
    return LearnerFitness(learner, train, folds, seed, alpha)(mask).fitness


# ============================================================================
# OPERADORES GENÉTICOS
# ============================================================================
def rank_key(record, mask):
    """Mayor aptitud, luego menos características, luego máscara lexicográficamente menor."""
    return (-record.fitness, mask.popcount, mask.key())


def repair(bits, rng):
    """Una máscara sin bits activos recibe un bit aleatorio."""
    if not bits.any():
        bits[rng.integers(bits.size)] = True
    return bits


def random_individual(rng, n):
    return FeatureMask.from_array(repair(rng.random(n) < 0.5, rng))


def tournament(rng, population, records, size):
    contenders = rng.integers(0, len(population), size=size)
    winner = min(contenders, key=lambda i: rank_key(records[i], population[i]))
    return population[winner]


def offspring(rng, population, records, config, n):
    """Selección por torneo, cruce uniforme, mutación por bit y reparación."""
    first = tournament(rng, population, records, config.tournament_size).as_array()
    second = tournament(rng, population, records, config.tournament_size).as_array()
    if rng.random() < config.crossover_rate:
        child = np.where(rng.random(n) < 0.5, first, second)
    else:
        child = first.copy()
    child ^= rng.random(n) < config.mutation_for(n)
    return FeatureMask.from_array(repair(child, rng))


# ============================================================================
# BUCLE GENERACIONAL
# ============================================================================
def run_ga(config, evaluator, n, threads=1):
    """
    AG generacional determinista.

    El individuo i de la generación g usa el flujo aleatorio (seed, g, i); la
    generación 0 es la población inicial. Las aptitudes de una generación se
    evalúan en paralelo y se leen en orden de población.

    Returns:
        GAResult con el mejor individuo visto en toda la ejecución
    """
    if n < 1:
        raise ArgumentError("el AG necesita al menos una característica")
    cache = FitnessCache(evaluator)
    size = config.population_size

    population = [random_individual(rng_for(config.seed, 0, i), n) for i in range(size)]
    records = ordered_map(cache, population, threads)
    history = []
    best_mask, best_record = None, None

    for generation in range(config.generations + 1):
        if generation > 0:
            ranked = sorted(range(size), key=lambda i: rank_key(records[i], population[i]))
            elites = [population[i] for i in ranked[:config.elitism]]
            children = [
                offspring(rng_for(config.seed, generation, i), population, records, config, n)
                for i in range(config.elitism, size)
            ]
            population = elites + children
            records = ordered_map(cache, population, threads)

        for mask, record in zip(population, records):
            if best_record is None or rank_key(record, mask) < rank_key(best_record, best_mask):
                best_mask, best_record = mask, record
        fitnesses = [r.fitness for r in records]
        history.append((max(fitnesses), float(np.mean(fitnesses))))
        logger.debug(f"Generación {generation}: mejor={history[-1][0]:.4f} media={history[-1][1]:.4f}")

    frequency = np.mean([mask.as_array() for mask in population], axis=0)
    logger.info(
        f"AG terminado: mejor aptitud {best_record.fitness:.4f} con {best_mask.popcount}/{n} "
        f"características ({len(cache)} evaluaciones)"
    )
    if best_record.flagged:
        logger.warning(f"La mejor máscara tuvo {best_record.failed_folds} fold(s) fallidos")
    return GAResult(
        best_mask=best_mask,
        best_fitness=best_record.fitness,
        history=history,
        evaluations=len(cache),
        selection_frequency=frequency,
        best_record=best_record,
    )


def evolve(config, learner, train, threads=1):
    """AG wrapper para un clasificador base sobre la partición de entrenamiento."""
    if min(train.class_counts()) == 0:
        raise ArgumentError("el AG necesita registros de ambas clases en entrenamiento")
    logger.info(f"AG wrapper para {learner.family}: n={train.n}, población={config.population_size}")
    evaluator = LearnerFitness(learner, train, config.fitness_folds, config.seed, config.alpha)
    return run_ga(config, evaluator, train.n, threads=threads)


# ============================================================================
# ANÁLISIS
# ============================================================================
def selection_frequency(results):
    """Fracción de ejecuciones cuya mejor máscara incluye cada característica."""
    results = list(results)
    if not results:
        raise ArgumentError("se necesita al menos un resultado")
    widths = {result.n for result in results}
    if len(widths) != 1:
        raise ArgumentError(f"resultados con distinto número de características: {sorted(widths)}")
    return np.mean([result.best_mask.as_array() for result in results], axis=0)


def exhaustive_search(evaluator, n):
    """
    Evalúa las 2^n - 1 máscaras no vacías (oráculo de fuerza bruta, n ≤ 15).

    Returns:
        tuple: (mejor máscara, su FitnessRecord, dict clave -> FitnessRecord)
    """
    if not 1 <= n <= 15:
        raise ArgumentError(f"búsqueda exhaustiva solo para 1 ≤ n ≤ 15, recibido {n}")
    records = {}
    best_mask, best_record = None, None
    for bits in itertools.product((False, True), repeat=n):
        if not any(bits):
            continue
        mask = FeatureMask(bits)
        record = evaluator(mask)
        records[mask.key()] = record
        if best_record is None or rank_key(record, mask) < rank_key(best_record, best_mask):
            best_mask, best_record = mask, record
    return best_mask, best_record, records
