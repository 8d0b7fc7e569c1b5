from django.apps import AppConfig


class SymmulConfig(AppConfig):
    name = 'symmul'
    verbose_name = 'django-symmul'
