# app_ceroslab/management/commands/seq.py
from app_ceroslab.management.base import LabCommand
from app_ceroslab.numerics.sequences import generate
from app_ceroslab.numerics.serialization import (
    file_sha256,
    write_sequence_binary,
    write_sequence_csv,
)


class Command(LabCommand):
    help = "Genera ξ(n) para n0 ≤ n < n1 y lo escribe en binario o CSV."

    def add_arguments(self, parser):
        self.add_sequence_arguments(parser)
        parser.add_argument("--n0", type=int, default=0)
        parser.add_argument("--n1", type=int, required=True)
        parser.add_argument("--out", required=True, help="Archivo de salida")
        parser.add_argument("--format", choices=["bin", "csv"], default="bin")

    def handle(self, *args, **options):
        multiplier = self.multiplier_from_options(options)
        buffer = generate(multiplier, options["n0"], options["n1"], options["seed"])
        if options["format"] == "csv":
            meta = {"multiplier": buffer.label, "seed": options["seed"]}
            write_sequence_csv(buffer, options["out"], meta)
        else:
            write_sequence_binary(buffer, options["out"])
        self.write_json(
            {
                "sequence": buffer.label,
                "n0": buffer.n0,
                "n1": buffer.n1,
                "seed": options["seed"],
                "path": options["out"],
                "sha256": file_sha256(options["out"]),
            }
        )
