from django.apps import AppConfig


class MaximalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.maximal'
    verbose_name = 'Maximal Operators'
