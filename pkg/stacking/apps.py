from django.apps import AppConfig


class StackingConfig(AppConfig):
    name = 'stacking'
    verbose_name = 'Generalización apilada'
