from django.apps import AppConfig


class FilterFsConfig(AppConfig):
    name = 'filter_fs'
    verbose_name = 'Selección por filtro'
