"""
URL configuration for toricity project.

The toric-decision API lives under ``api/toric/`` and the persisted
graphical-model screenings under ``api/screenings/``.
"""

from django.contrib import admin
from django.urls import include, path

urlpatterns = [
    path("admin/", admin.site.urls),
    path("", include("symbolic.urls")),
    path("", include("graphical.urls")),
]
