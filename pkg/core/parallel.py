"""
Pool de workers con resultados en orden de entrada.

Los resultados se devuelven en el orden de `items`, de modo que threads=1 y
threads=N producen exactamente la misma salida.
"""
from joblib import Parallel, delayed


def ordered_map(fn, items, threads=1):
    """
    Aplica `fn` a cada elemento y devuelve la lista de resultados en orden.

    Args:
        fn: Función de un argumento
        items: Iterable de entradas
        threads: Máximo de workers (1 = ejecución secuencial en el hilo actual)
    """
    items = list(items)
    n_jobs = max(1, min(threads or 1, len(items)))
    return Parallel(n_jobs=n_jobs, prefer='threads')(delayed(fn)(item) for item in items)
