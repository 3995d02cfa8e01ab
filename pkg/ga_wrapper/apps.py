from django.apps import AppConfig


class GaWrapperConfig(AppConfig):
    name = 'ga_wrapper'
    verbose_name = 'Algoritmo genético wrapper'
