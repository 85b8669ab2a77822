from django.apps import AppConfig


class AppCeroslabConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'app_ceroslab'
    verbose_name = 'Laboratorio de ceros'
