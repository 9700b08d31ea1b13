import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'equideg.settings')
django.setup()
