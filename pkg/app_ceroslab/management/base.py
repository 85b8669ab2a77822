# app_ceroslab/management/base.py
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from app_ceroslab.numerics.errors import EXIT_VALIDATION, LabError
from app_ceroslab.serializers.configuracion_serializers import (
    SequenceSpecSerializer,
    WeightSpecSerializer,
)
from app_ceroslab.services.contexto import build_multiplier, build_weight

logger = logging.getLogger(__name__)


def float_list(text):
    """Lista separada por comas: "10,15,20" → [10.0, 15.0, 20.0]."""
    return [float(part) for part in text.split(",") if part.strip()]


def int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


class LabCommand(BaseCommand):
    """
    Comando base del laboratorio.

    Traduce LabError en CommandError con el código de salida del error
    (2 validación, 3 capacidad, 4 numérico).
    """

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except LabError as exc:
            logger.debug("Detalle del error: %s", exc.detail)
            raise CommandError(exc.message, returncode=exc.exit_code)

    # -- argumentos compartidos ---------------------------------------------

    def add_weight_arguments(self, parser):
        group = parser.add_argument_group("peso")
        group.add_argument("--family", default="log_family", help="log_family | power_family")
        group.add_argument("--alpha", type=float, help="α de log_family")
        group.add_argument("--beta", type=float, help="β de power_family")
        group.add_argument("--c", type=float, default=1.0, help="c de power_family")

    def add_sequence_arguments(self, parser):
        group = parser.add_argument_group("secuencia")
        group.add_argument("--kind", required=True, help="Familia de multiplicadores")
        group.add_argument("--seq-alpha", dest="seq_alpha", help="α de quadratic (decimal)")
        group.add_argument("--base", default="steinhaus", help="rademacher | steinhaus")
        group.add_argument("--seed", type=int, default=0)

    def fail_validation(self, errors):
        raise CommandError(json.dumps(errors, ensure_ascii=False), returncode=EXIT_VALIDATION)

    def weight_from_options(self, options):
        data = {"kind": options["family"], "c": options["c"]}
        for key in ("alpha", "beta"):
            if options.get(key) is not None:
                data[key] = options[key]
        serializer = WeightSpecSerializer(data=data)
        if not serializer.is_valid():
            self.fail_validation(serializer.errors)
        return build_weight(serializer.validated_data)

    def multiplier_from_options(self, options):
        data = {"kind": options["kind"], "base": options["base"]}
        if options.get("seq_alpha") is not None:
            data["alpha"] = options["seq_alpha"]
        serializer = SequenceSpecSerializer(data=data)
        if not serializer.is_valid():
            self.fail_validation(serializer.errors)
        return build_multiplier(serializer.validated_data)

    def write_json(self, data):
        self.stdout.write(json.dumps(data, indent=2, ensure_ascii=False, default=str))
