"""
Valores publicados para Statlog Heart, impresos junto a los obtenidos.

Son referencias, no oráculos: dependen de hiperparámetros, semillas y
protocolo de validación no documentados.
"""

# (exactitud, sensibilidad, especificidad) en % por método y plan
PUBLISHED_BY_PLAN = {
    'rf': {'holdout': (88, 87, 86), 'k2': (92, 91, 90), 'k5': (93, 92, 91), 'k10': (94, 93, 92)},
    'knn': {'holdout': (76, 77, 73), 'k2': (77, 76, 77), 'k5': (81, 80, 80.56), 'k10': (89, 85, 87)},
    'mlp': {'holdout': (91, 90, 92), 'k2': (93, 92, 91), 'k5': (93, 92, 91), 'k10': (94, 93, 92)},
    'cart': {'holdout': (88, 88, 87), 'k2': (95, 94, 96), 'k5': (93, 92, 89), 'k10': (94, 91, 93)},
    'nb': {'holdout': (75, 74, 72), 'k2': (79, 78, 78.5), 'k5': (78, 77, 76), 'k10': (86, 85, 83)},
    'lr': {'holdout': (74, 73, 71), 'k2': (75, 74, 75), 'k5': (81, 80, 79), 'k10': (87, 85, 84)},
    'svm': {'holdout': (73, 71, 70), 'k2': (73, 72, 69), 'k5': (88, 85, 84), 'k10': (89.05, 89, 88)},
    'stacked_ga': {'holdout': (88, 87, 87.5), 'k2': (92.56, 92, 93), 'k5': (96, 95, 96), 'k10': (97.57, 98, 97)},
}

# Clasificadores envueltos por el AG (sin plan asociado)
PUBLISHED_WRAPPERS = {
    'svm_ga': (84, 82, 79),
    'nb_ga': (79, 81, 82),
    'cart_ga': (94, 92, 92.87),
    'mlp_ga': (92, 91, 90),
    'knn_ga': (87, 86, 87),
    'rf_ga': (94, 93, 92),
    'lr_ga': (90, 89, 91),
    'stacked_ga': (97.57, 96, 97),
}

# Filtros: tiempo (unidad no documentada), características seleccionadas, exactitud %
PUBLISHED_FILTERS = {
    'fcbf': {'running_time': 20, 'selected': 8, 'accuracy': 87.2},
    'relief': {'running_time': 32, 'selected': 9, 'accuracy': 94.16},
}

REFERENCE_NOTE = (
    "ref_*: valores publicados para Statlog Heart; referencia, no objetivo exacto "
    "(hiperparámetros, semillas y protocolo de validación no documentados)"
)


def reference_triple(method, plan_label=None):
    """(acc, sen, spec) publicados para un método, o None."""
    if method in PUBLISHED_BY_PLAN and plan_label in PUBLISHED_BY_PLAN[method]:
        return PUBLISHED_BY_PLAN[method][plan_label]
    if method in PUBLISHED_WRAPPERS:
        return PUBLISHED_WRAPPERS[method]
    if method in PUBLISHED_FILTERS:
        return PUBLISHED_FILTERS[method]['accuracy'], None, None
    return None


def reference_accuracy(method, plan_label=None):
    triple = reference_triple(method, plan_label)
    return triple[0] if triple else None
