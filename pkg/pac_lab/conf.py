"""Access to the PAC_LAB settings dict, with built-in fallbacks."""

from django.conf import settings

DEFAULTS = {
    "MATRIX_ATOL": 1e-10,
    "DISTINGUISHABILITY_ATOL": 1e-8,
    "PROBABILITY_ATOL": 1e-12,
    "MAX_SHATTER_SUBSET": 25,
    "MAX_CLASS_SIZE": 10**6,
    "MAX_VC_SUBSETS": 5 * 10**6,
    "MAX_EXACT_RADEMACHER_POINTS": 20,
    "MAX_MUTUAL_INFO_D": 8,
    "DEFAULT_SEED": 20240601,
    "N_JOBS": 1,
    "RECORD_TIMING": True,
    "SLOW_TESTS": False,
}


def lab_setting(name: str):
    """Get a lab tunable from Django settings, or its default when settings are not configured."""
    if settings.configured:
        value = getattr(settings, "PAC_LAB", {}).get(name)
        if value is not None:
            return value
    return DEFAULTS[name]


def resolve(value, name: str):
    """Return value unless it is None, in which case fall back to the named setting."""
    return lab_setting(name) if value is None else value
