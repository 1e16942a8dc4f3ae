from django.apps import AppConfig


class QstateConfig(AppConfig):
    name = "qstate"
    verbose_name = "Quantum states and measurements"
