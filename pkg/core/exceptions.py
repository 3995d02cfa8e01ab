"""
Jerarquía de errores del proyecto y manejador común para la CLI.

Todas las operaciones levantan subclases de StackGAError; los comandos de
administración convierten cualquier error en un payload estandarizado y en
un código de salida (0 éxito, 1 fallo en ejecución, 2 configuración/lectura).
"""

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


class StackGAError(Exception):
    """Error base. `details` lleva contexto adicional serializable."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.message = message
        self.details = details


class ArgumentError(StackGAError, ValueError):
    """Argumento fuera de su precondición (fracción, k, ancho de fila, máscara...)."""


class DatasetParseError(StackGAError):
    """Archivo de datos ilegible. `line` es 1-based cuando se conoce."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"línea {line}: {message}"
        super().__init__(message, details={'line': line})
        self.line = line


class DomainError(StackGAError):
    """Valor con formato correcto pero fuera de su dominio (p. ej. etiqueta 3)."""


class TrainingError(StackGAError):
    """Fallo al entrenar un clasificador o un nivel del ensamble."""

    def __init__(self, message, stage=None, learner_index=None):
        super().__init__(message, details={'stage': stage, 'learner_index': learner_index})
        self.stage = stage
        self.learner_index = learner_index


class EmptySelectionError(StackGAError):
    """Un filtro descartó todas las características."""


class LeakageError(StackGAError):
    """Se leyeron etiquetas de una partición de prueba antes de predecir."""


class ConfigError(StackGAError):
    """Documento de configuración inválido. `errors` tiene el formato de DRF."""

    def __init__(self, message, errors=None):
        super().__init__(message, details=errors)
        self.errors = errors


class StageError(StackGAError):
    """Envuelve un error de ejecución con el nombre de la etapa que falló."""

    def __init__(self, stage, cause):
        super().__init__(f"la etapa '{stage}' falló: {cause}")
        self.stage = stage
        self.cause = cause


# ============================================================================
# MANEJADOR COMÚN DE ERRORES PARA LOS COMANDOS
# ============================================================================
LOAD_ERRORS = (ConfigError, DatasetParseError, DomainError)


def exit_code_for(exc, loading=False):
    """
    Código de salida de la CLI para una excepción.

    Args:
        exc: Excepción capturada
        loading: True si ocurrió al leer/validar config o datos

    Returns:
        int: 2 para errores de configuración o lectura, 1 para el resto
    """
    if isinstance(exc, LOAD_ERRORS):
        return EXIT_CONFIG
    if loading and isinstance(exc, (ArgumentError, OSError)):
        return EXIT_CONFIG
    return EXIT_RUNTIME


def command_error_payload(exc, loading=False):
    """
    Estructura estándar que los comandos imprimen cuando algo falla.
    """
    payload = {
        "success": False,
        "exit_code": exit_code_for(exc, loading=loading),
        "message": "Ha ocurrido un error",
        "errors": None,
        "stage": None,
    }

    # --- CASO 1: Errores de validación de configuración ---
    if isinstance(exc, ConfigError):
        payload["message"] = exc.message
        payload["errors"] = exc.errors

    # --- CASO 2: Fallo de una etapa del pipeline ---
    elif isinstance(exc, StageError):
        payload["message"] = exc.message
        payload["stage"] = exc.stage

    # --- CASO 3: Cualquier otro error conocido ---
    elif isinstance(exc, StackGAError):
        payload["message"] = exc.message
        payload["errors"] = exc.details

    else:
        payload["message"] = str(exc) or exc.__class__.__name__

    return payload
