"""Settings access for structcon.

Every tunable is a Django setting prefixed with ``STRUCTCON_``. When the
package runs outside of a Django project (the ``structcon`` console script,
the test-suite) :func:`setup` configures a minimal settings object.
"""
import os

import django
from django.conf import settings

DEFAULTS = {
    'TRIALS': 8,
    'DRAWS': 32,
    'SEED': 0,
    'POOL': (-9, 9),
    'MAX_N': 12,
}

DEFAULT_LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'structcon': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}


class AppSettings(object):

    def __getattr__(self, name):
        if name not in DEFAULTS:
            raise AttributeError(name)
        return getattr(settings, 'STRUCTCON_' + name, DEFAULTS[name])


app_settings = AppSettings()


def setup(**overrides):
    """Bootstrap Django for standalone use; a no-op once settings exist."""
    if not settings.configured:
        if os.environ.get('DJANGO_SETTINGS_MODULE'):
            django.setup()
            return
        options = {
            'INSTALLED_APPS': ['structcon'],
            'USE_I18N': True,
            'LANGUAGE_CODE': 'en-us',
            'TEMPLATES': [{
                'BACKEND': 'django.template.backends.django.DjangoTemplates',
                'APP_DIRS': True,
            }],
            'LOGGING': DEFAULT_LOGGING,
        }
        options.update(overrides)
        settings.configure(**options)
    django.setup()
