# app_ceroslab/management/commands/corr.py
from app_ceroslab.management.base import LabCommand, int_list
from app_ceroslab.numerics import correlations as corr
from app_ceroslab.numerics.sequences import MultiplierKind, generate


class Command(LabCommand):
    help = "Autocorrelaciones empíricas y, si la familia lo tiene, su valor límite."

    def add_arguments(self, parser):
        self.add_sequence_arguments(parser)
        parser.add_argument("--x", type=int, required=True, help="Largo X de la suma")
        parser.add_argument("--h", type=int_list, default=[0, 1, 2, 3], help="Desplazamientos")

    def handle(self, *args, **options):
        multiplier = self.multiplier_from_options(options)
        x, hs = options["x"], sorted(set(options["h"]))
        seq = generate(multiplier, 0, x + max(hs) + 1, options["seed"])
        rows = []
        for h in hs:
            value = corr.autocorr(seq, x, h)
            row = {"h": h, "re": value.real, "im": value.imag, "model": None}
            if multiplier.kind is MultiplierKind.THUE_MORSE:
                row["model"] = float(corr.tm_sigma(h))
            elif multiplier.kind is MultiplierKind.SQUAREFREE:
                row["model"] = corr.mirsky_D(h)
            rows.append(row)
        self.write_json({"sequence": seq.label, "x": x, "seed": options["seed"], "rows": rows})
