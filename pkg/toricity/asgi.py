"""
ASGI config for toricity project.

Exposes ``application`` for ASGI servers; the API is plain request/response.
"""

import os

from django.core.asgi import get_asgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "toricity.settings")

application = get_asgi_application()
