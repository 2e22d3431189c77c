"""
Accès aux paramètres SPECTRAL_BENCH avec valeurs par défaut.

Les modules de calcul sont aussi exécutés dans des processus de travail où
Django n'est pas forcément configuré : on retombe alors sur DEFAULTS.
"""
from django.conf import settings

DEFAULTS = {
    'MAX_ORDER': 64,
    'CANONICAL_CEILING': 12,
    'ENUMERATION_CEILING_ALL': 10,
    'ENUMERATION_CEILING_SPARSE': 12,
    'PRUNE_HEREDITARY': True,
    'SEARCH_WORKERS': 1,
    'SEARCH_SPLIT_LEVEL': 5,
    'JACOBI_TOLERANCE': 1e-12,
    'JACOBI_MAX_SWEEPS': 60,
    'POWER_TOLERANCE': 1e-13,
    'POWER_MAX_ITERATIONS': 20000,
    'CHECK_TOLERANCE': 1e-9,
    'PERTURBATION_MARGIN': 1e-6,
    'TABLE_DIGITS': 12,
}


def bench_setting(name: str):
    """Valeur d'un paramètre de l'atelier"""
    if name not in DEFAULTS:
        raise KeyError(name)
    if settings.configured:
        return getattr(settings, 'SPECTRAL_BENCH', {}).get(name, DEFAULTS[name])
    return DEFAULTS[name]
