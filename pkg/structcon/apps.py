from django.apps import AppConfig


class StructconConfig(AppConfig):
    name = 'structcon'
    verbose_name = 'Structural controllability'
