"""
WSGI entry point serving the equideg HTTP API (``/api/``).
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'equideg.settings')

application = get_wsgi_application()
