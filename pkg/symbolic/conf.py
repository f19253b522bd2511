"""Access to the ``TORIC_SETTINGS`` dict with built-in fallbacks."""

from django.conf import settings

DEFAULTS = {
    "RETRY_BUDGET": 16,
    "GROEBNER_PAIR_BUDGET": 200000,
    "DEFAULT_SEED": 0,
    "BAREISS_THRESHOLD": 400,
    "HOMOGENIZING_VARIABLE": "x0",
}


def get_setting(name):
    """Return a configured engine tunable, falling back to the default."""
    configured = getattr(settings, "TORIC_SETTINGS", None) or {}
    if name in configured:
        return configured[name]
    return DEFAULTS[name]
