# app_ceroslab/management/commands/run.py
import json

from django.core.management.base import CommandError

from app_ceroslab.management.base import LabCommand
from app_ceroslab.numerics.errors import EXIT_VALIDATION
from app_ceroslab.services import runner


def read_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CommandError(f"No se pudo leer {path}: {exc}", returncode=EXIT_VALIDATION)
    except ValueError as exc:
        raise CommandError(f"JSON inválido en {path}: {exc}", returncode=EXIT_VALIDATION)


class Command(LabCommand):
    help = "Ejecuta una configuración de experimentos y escribe sus tablas."

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="Documento JSON de configuración")
        parser.add_argument("--out", help="Directorio de salida")
        parser.add_argument("--seed", type=int, help="Semilla (reemplaza la de la configuración)")
        parser.add_argument("--threads", type=int, help="Hilos del pool de trabajo")
        parser.add_argument("--constants", help="Archivo de constantes congeladas")
        parser.add_argument(
            "--no-persist",
            action="store_true",
            help="No registrar el experimento en la base de datos",
        )

    def handle(self, *args, **options):
        if options["threads"] is not None and options["threads"] < 1:
            raise CommandError("--threads debe ser ≥ 1", returncode=EXIT_VALIDATION)
        if options["seed"] is not None and not 0 <= options["seed"] < 2**64:
            raise CommandError("--seed debe ser un entero de 64 bits", returncode=EXIT_VALIDATION)
        ejecucion = runner.run(
            read_config(options["config"]),
            out_dir=options["out"],
            seed=options["seed"],
            threads=options["threads"],
            constants_path=options["constants"],
            persist=not options["no_persist"],
        )
        for item in ejecucion.resumen["experiments"]:
            ok = item["summary"].get("all_pass")
            mark = self.style.SUCCESS("ok") if ok is not False else self.style.WARNING("revisar")
            self.stdout.write(f"{item['name']}: {mark} ({len(item['files'])} archivos)")
        if not ejecucion.resumen["experiments"]:
            self.stdout.write("Sin experimentos.")
