# app_ceroslab/management/commands/equidist.py
from app_ceroslab.management.base import LabCommand, float_list
from app_ceroslab.numerics.equidist import (
    DEFAULT_TAU,
    boundary_neighborhood,
    gauss_lattice_check,
)
from app_ceroslab.numerics.regions import AnnulusSector, Disk
from app_ceroslab.serializers.configuracion_serializers import GaugeSpecSerializer
from app_ceroslab.services.contexto import build_gauge


class Command(LabCommand):
    help = "Gauge radial ρ(R), vecindades del borde y la línea base de Gauss."

    def add_arguments(self, parser):
        self.add_weight_arguments(parser)
        parser.add_argument("--gauge", default="sqrt_log", help="Tipo de gauge radial")
        parser.add_argument("--gauge-c", dest="gauge_c", type=float)
        parser.add_argument("--gauge-a", dest="gauge_a", type=float, default=0.0)
        parser.add_argument("--rho0", type=float)
        parser.add_argument("--R", type=float_list, default=[], help="Radios donde evaluar ρ")
        parser.add_argument("--sector", type=float_list, help="r1,r2,theta1,theta2 para la vecindad")
        parser.add_argument("--tau", type=float, default=DEFAULT_TAU)
        parser.add_argument("--lattice-r", type=float, help="Radio del disco del conteo de Gauss")

    def handle(self, *args, **options):
        data = {}
        if options["lattice_r"]:
            data["lattice"] = gauss_lattice_check(Disk(options["lattice_r"])).to_dict()
        if options["R"] or options["sector"]:
            spec = {"kind": options["gauge"], "a": options["gauge_a"]}
            if options["gauge_c"] is not None:
                spec["c"] = options["gauge_c"]
            if options["rho0"] is not None:
                spec["rho0"] = options["rho0"]
            serializer = GaugeSpecSerializer(data=spec)
            if not serializer.is_valid():
                self.fail_validation(serializer.errors)
            weight = self.weight_from_options(options)
            gauge = build_gauge(serializer.validated_data, weight)
            data["gauge"] = gauge.to_dict()
            data["rho"] = [{"R": R, "rho": gauge.rho(R)} for R in options["R"]]
            if options["sector"]:
                region = AnnulusSector(*options["sector"])
                nb = boundary_neighborhood(gauge, region, options["tau"], weight)
                data["neighborhood"] = {
                    "region": region.label(),
                    "tau": options["tau"],
                    "mass": nb.mass,
                    "proxy": nb.proxy,
                    "flagged": nb.flagged,
                }
        self.write_json(data)
