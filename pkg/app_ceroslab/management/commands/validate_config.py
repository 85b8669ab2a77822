# app_ceroslab/management/commands/validate_config.py
from django.core.management.base import CommandError

from app_ceroslab.management.base import LabCommand
from app_ceroslab.management.commands.run import read_config
from app_ceroslab.numerics.errors import EXIT_VALIDATION
from app_ceroslab.services import runner


class Command(LabCommand):
    help = "Valida una configuración sin ejecutar ningún cálculo."

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True)

    def handle(self, *args, **options):
        errores = runner.validate(read_config(options["config"]))
        if errores:
            for error in errores:
                self.stderr.write(error)
            raise CommandError(f"{len(errores)} error(es) de validación", returncode=EXIT_VALIDATION)
        self.stdout.write(self.style.SUCCESS("Configuración válida"))
