"""
Django settings for equideg project.
"""

from pathlib import Path

from decouple import config
from django.core.exceptions import ImproperlyConfigured

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-change-this-in-production')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=True, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1,testserver', cast=lambda v: [s.strip() for s in v.split(',')])

# Application definition
INSTALLED_APPS = [
    # Third-party apps
    'rest_framework',
    'corsheaders',

    # Local apps
    'equideg.apps.bessel',
    'equideg.apps.spectral',
    'equideg.apps.burnside',
    'equideg.apps.degree',
    'equideg.apps.bifurcation',
    'equideg.apps.cli',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'corsheaders.middleware.CorsMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'equideg.urls'

WSGI_APPLICATION = 'equideg.wsgi.application'

# Every computation is a pure function of its inputs; nothing is persisted.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True


# REST Framework configuration
REST_FRAMEWORK = {
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'EXCEPTION_HANDLER': 'equideg.exceptions.equideg_exception_handler',
}

# CORS settings
CORS_ALLOWED_ORIGINS = config(
    'CORS_ALLOWED_ORIGINS',
    default='http://localhost:3000,http://127.0.0.1:3000',
    cast=lambda v: [s.strip() for s in v.split(',') if s.strip()],
)


def parse_caps(value):
    """Parse an EQUIDEG_CAPS override such as ``mode=300,index=2048,powerset=24``."""
    caps = {}
    for item in filter(None, (part.strip() for part in value.split(','))):
        key, sep, raw = item.partition('=')
        key = key.strip().lower()
        if not sep or key not in ('mode', 'index', 'powerset'):
            raise ImproperlyConfigured(f"EQUIDEG_CAPS: cannot parse '{item}'")
        try:
            caps[key] = int(raw)
        except ValueError:
            raise ImproperlyConfigured(f"EQUIDEG_CAPS: '{raw}' is not an integer") from None
        if caps[key] < 1:
            raise ImproperlyConfigured(f"EQUIDEG_CAPS: {key} must be positive")
    return caps


_CAPS = config('EQUIDEG_CAPS', default='', cast=parse_caps)

# Custom settings
EQUIDEG = {
    'MODE_CAP': _CAPS.get('mode', config('EQUIDEG_MODE_CAP', default=256, cast=int)),
    'INDEX_CAP': _CAPS.get('index', config('EQUIDEG_INDEX_CAP', default=1024, cast=int)),
    'POWERSET_CAP': _CAPS.get('powerset', config('EQUIDEG_POWERSET_CAP', default=22, cast=int)),
    'BESSEL_TOLERANCE': config('EQUIDEG_BESSEL_TOLERANCE', default=1e-13, cast=float),
    'SPECTRAL_TOLERANCE': config('EQUIDEG_SPECTRAL_TOLERANCE', default=1e-9, cast=float),
    'NONDEGENERACY_GUARD': config('EQUIDEG_NONDEGENERACY_GUARD', default=1e-6, cast=float),
    'GRID_DIVISIONS': config('EQUIDEG_GRID_DIVISIONS', default=1024, cast=int),
    'CROSSING_TOLERANCE': config('EQUIDEG_CROSSING_TOLERANCE', default=1e-10, cast=float),
    'ZERO_TABLE_PATH': config('EQUIDEG_ZERO_TABLE_PATH', default=''),
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'equideg': {
            'handlers': ['console'],
            'level': config('EQUIDEG_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}
