"""
WSGI config for toricity project.

It exposes the WSGI callable as a module-level variable named ``application``.
Served with gunicorn: ``gunicorn toricity.wsgi``.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "toricity.settings")

application = get_wsgi_application()
