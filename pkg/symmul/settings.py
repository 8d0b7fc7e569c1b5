from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from symmul.utils.registry import ModuleRegistry

__all__ = ['base_settings']


SYMMUL_DEFAULT = {
    # output
    'FORMAT_VERSION': '1',

    # bounds
    'MAX_TOWER_LEVEL': 64,

    # chud
    'PLAN_SEARCH_LIMIT': 64,
    'EXHAUSTIVE_VERIFY_LIMIT': 64,
    'SPOT_CHECK_SAMPLES': 100,
    'RANDOM_SEED': 0,

    # curvecheck
    'POINT_COUNT_LIMIT': 10 ** 6,

    # costacct
    'AUDIT_GRID': 'n=1..8,g=0..4,N1=0..8,N2=0..4',

    # workers
    'WORKER_COUNT': 1,

    # errors
    'SENTRY_HOST': None,
    'SENTRY_VERBOSE': False,
}

base_settings = ModuleRegistry('base_settings', include_module=True)
base_settings.update(SYMMUL_DEFAULT)

try:
    user_settings = getattr(settings, 'SYMMUL', None)
except ImproperlyConfigured:
    user_settings = None
if user_settings is not None:
    base_settings.update(user_settings)
