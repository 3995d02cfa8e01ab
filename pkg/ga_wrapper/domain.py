"""
Configuración y resultados del algoritmo genético de selección de características.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from core.exceptions import ArgumentError


@dataclass(frozen=True)
class GAConfig:
    """
    Parámetros del AG generacional.

    `mutation_rate` None = 1/n (se resuelve con el ancho del dataset).
    """
    population_size: int = 50
    generations: int = 100
    crossover_rate: float = 0.8
    mutation_rate: float = None
    tournament_size: int = 3
    elitism: int = 2
    alpha: float = 0.01
    fitness_folds: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ArgumentError(f"population_size debe ser ≥ 2, recibido {self.population_size}")
        if self.generations < 1:
            raise ArgumentError(f"generations debe ser ≥ 1, recibido {self.generations}")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ArgumentError(f"crossover_rate fuera de [0, 1]: {self.crossover_rate}")
        if self.mutation_rate is not None and not 0.0 <= self.mutation_rate <= 1.0:
            raise ArgumentError(f"mutation_rate fuera de [0, 1]: {self.mutation_rate}")
        if not 1 <= self.tournament_size <= self.population_size:
            raise ArgumentError(
                f"tournament_size debe estar en [1, {self.population_size}], recibido {self.tournament_size}"
            )
        if not 0 <= self.elitism < self.population_size:
            raise ArgumentError(
                f"elitism debe estar en [0, {self.population_size}), recibido {self.elitism}"
            )
        if self.alpha < 0:
            raise ArgumentError(f"alpha debe ser ≥ 0, recibido {self.alpha}")
        if self.fitness_folds < 2:
            raise ArgumentError(f"fitness_folds debe ser ≥ 2, recibido {self.fitness_folds}")

    def mutation_for(self, n):
        return self.mutation_rate if self.mutation_rate is not None else 1.0 / n

    def with_seed(self, seed):
        return replace(self, seed=int(seed))

    def to_dict(self):
        return {
            'population_size': self.population_size,
            'generations': self.generations,
            'crossover_rate': self.crossover_rate,
            'mutation_rate': self.mutation_rate,
            'tournament_size': self.tournament_size,
            'elitism': self.elitism,
            'alpha': self.alpha,
            'fitness_folds': self.fitness_folds,
            'seed': self.seed,
        }


@dataclass(frozen=True)
class FitnessRecord:
    """Aptitud de una máscara: exactitud CV media menos la penalización."""
    fitness: float
    accuracy: float
    failed_folds: int = 0

    @property
    def flagged(self):
        return self.failed_folds > 0


@dataclass
class GAResult:
    best_mask: object
    best_fitness: float
    history: list = field(default_factory=list)
    evaluations: int = 0
    selection_frequency: np.ndarray = None
    best_record: FitnessRecord = None

    @property
    def n(self):
        return self.best_mask.n

    def history_array(self):
        """Historia como matriz (generaciones + 1) x 2: [mejor, media]."""
        return np.array(self.history, dtype=float).reshape(-1, 2)

    def to_dict(self):
        return {
            'best_mask': self.best_mask.indices,
            'best_fitness': self.best_fitness,
            'history': self.history_array().tolist(),
            'evaluations': self.evaluations,
            'selection_frequency': [float(v) for v in self.selection_frequency],
            'flagged': bool(self.best_record and self.best_record.flagged),
        }
