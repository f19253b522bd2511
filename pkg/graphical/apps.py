from django.apps import AppConfig


class GraphicalConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "graphical"
    verbose_name = "Gaussian graphical model screenings"
