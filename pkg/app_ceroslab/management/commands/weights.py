# app_ceroslab/management/commands/weights.py
import numpy as np

from app_ceroslab.management.base import LabCommand, float_list
from app_ceroslab.numerics.serialization import write_csv

COLUMNS = ["R", "nu", "sigma", "log_mu", "delta"]


class Command(LabCommand):
    help = "Tabla de ν(R), σ(R), log μ(R) y Δ para una familia de pesos."

    def add_arguments(self, parser):
        self.add_weight_arguments(parser)
        parser.add_argument("--R", type=float_list, required=True, help="Radios separados por comas")
        parser.add_argument("--regularity-eps", type=float, help="ε del informe de regularidad de φ")
        parser.add_argument("--out", help="Escribe la tabla en CSV en lugar de imprimirla")

    def handle(self, *args, **options):
        weight = self.weight_from_options(options)
        rows = []
        for R in options["R"]:
            nu, sigma = weight.nu_sigma(R)
            rows.append(
                {
                    "R": R,
                    "nu": nu,
                    "sigma": sigma,
                    "log_mu": weight.log_mu(R),
                    "delta": weight.delta_at(R),
                }
            )
        if options["out"]:
            count = write_csv(options["out"], COLUMNS, rows, {"weight": options["family"]})
            self.stdout.write(self.style.SUCCESS(f"{count} filas escritas en {options['out']}"))
            return
        data = {"weight": weight.to_dict(), "rows": rows}
        eps = options.get("regularity_eps")
        if eps is not None:
            t_grid = [row["nu"] for row in rows]
            data["regularity"] = [
                vars(row) for row in weight.regularity_report(np.asarray(t_grid), eps)
            ]
        self.write_json(data)
