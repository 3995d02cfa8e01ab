"""
Configuración de Django para el proyecto stackga.

El proyecto no expone una API HTTP: Django aporta el registro de aplicaciones, los
comandos de administración (CLI), el ORM para el historial de ejecuciones y
el runner de pruebas.

Variables de entorno (archivo .env, leídas con python-decouple):
    SECRET_KEY, DEBUG, STACKGA_THREADS, STACKGA_OUTPUT_DIR,
    STACKGA_STATLOG_PATH, STACKGA_RECORD_RUNS, STACKGA_LOG_LEVEL
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: la clave firma las sesiones del panel de administración.
SECRET_KEY = config('SECRET_KEY', default='stackga-dev-only-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',

    # Third party apps
    'rest_framework',

    # Local apps
    'core',          # <- Modelo base, excepciones, semillas, pool de workers
    'dataset',       # <- Lectura Statlog, particiones, escalado, máscaras
    'metrics',       # <- Matriz de confusión y métricas escalares
    'learners',      # <- Siete clasificadores base
    'filter_fs',     # <- Relief y FCBF
    'ga_wrapper',    # <- Algoritmo genético wrapper
    'stacking',      # <- Generalización apilada y ST-GA
    'experiments',   # <- Orquestación de experimentos (CLI) e historial
]

# Solo el panel de administración (historial de ejecuciones) usa middleware y plantillas.
MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'stackga_project.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

STATIC_URL = 'static/'


# Database
# Solo se usa para el historial de ejecuciones (experiments.ExperimentRun).

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('STACKGA_DB_PATH', default=str(BASE_DIR / 'db.sqlite3')),
    }
}


# Internationalization

LANGUAGE_CODE = 'es-es'  # Español

TIME_ZONE = 'America/Bogota'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# ============================================================================
# STACKGA CONFIGURATION
# ============================================================================
STACKGA = {
    # Límite de workers por defecto (--threads lo sobrescribe)
    'THREADS': config('STACKGA_THREADS', default=1, cast=int),

    # Carpeta donde se escriben tablas y configuración resuelta
    'OUTPUT_DIR': config('STACKGA_OUTPUT_DIR', default=str(BASE_DIR / 'out')),

    # Archivo heart.dat de UCI Statlog (270 registros x 14 campos)
    'STATLOG_PATH': config('STACKGA_STATLOG_PATH', default=str(BASE_DIR / 'data' / 'heart.dat')),

    # Guardar cada invocación de la CLI como ExperimentRun
    'RECORD_RUNS': config('STACKGA_RECORD_RUNS', default=True, cast=bool),

    # Decimales de los porcentajes en los reportes ("97.57")
    'REPORT_DECIMALS': 2,
}


# ============================================================================
# REST FRAMEWORK CONFIGURATION
# ============================================================================
# Solo se usan los serializers para validar documentos JSON de configuración.
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}


# ============================================================================
# LOGGING CONFIGURATION
# ============================================================================
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': config('STACKGA_LOG_LEVEL', default='INFO'),
    },
}
