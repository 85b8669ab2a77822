# app_ceroslab/management/commands/zeros.py
from app_ceroslab.management.base import LabCommand, float_list
from app_ceroslab.numerics.errors import CapacityError
from app_ceroslab.numerics.evaluator import SeriesSpec
from app_ceroslab.numerics.regions import AnnulusSector, Disk
from app_ceroslab.numerics.sequences import generate
from app_ceroslab.numerics.zeros import count_region, localize_zeros
from app_ceroslab.services.contexto import required_index


class Command(LabCommand):
    help = "Cuenta (y opcionalmente localiza) los ceros de F_ξ en un disco o sector."

    def add_arguments(self, parser):
        self.add_weight_arguments(parser)
        self.add_sequence_arguments(parser)
        parser.add_argument("--R", type=float, help="Radio del disco")
        parser.add_argument("--center", type=float_list, default=[0.0, 0.0], help="re,im")
        parser.add_argument("--sector", type=float_list, help="r1,r2,theta1,theta2 (vueltas)")
        parser.add_argument("--min-samples", type=int, default=256)
        parser.add_argument("--max-index", type=int, help="Cantidad de coeficientes disponibles")
        parser.add_argument("--localize", type=float, help="Diámetro objetivo de los encierros")

    def handle(self, *args, **options):
        weight = self.weight_from_options(options)
        multiplier = self.multiplier_from_options(options)
        center = complex(*options["center"][:2])
        if options["sector"]:
            r1, r2, t1, t2 = options["sector"]
            region = AnnulusSector(r1, r2, t1, t2, center)
        elif options["R"]:
            region = Disk(options["R"], center)
        else:
            self.fail_validation({"R": "Indique --R o --sector"})
        reach = abs(center) + (region.r if isinstance(region, Disk) else region.r2)
        needed = required_index(weight, reach)
        max_index = options["max_index"] or needed
        if max_index < needed:
            raise CapacityError(
                "max_index no cubre la región", required_max_index=needed, max_index=max_index
            )
        spec = SeriesSpec(weight, generate(multiplier, 0, max_index, options["seed"]))
        report = count_region(spec, region, options["min_samples"])
        data = {"report": report.to_dict(), "series": spec.describe()}
        if options["localize"]:
            enclosures = localize_zeros(spec, region, options["localize"], options["min_samples"])
            data["zeros"] = [e.to_dict() for e in enclosures]
        self.write_json(data)
