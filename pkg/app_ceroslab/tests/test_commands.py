import json
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings, tag

from app_ceroslab.models import Experimento
from app_ceroslab.numerics.serialization import read_csv, read_sequence_binary

WEIGHT_ARGS = ["--family=log_family", "--alpha=0.5"]


class ComandoTestMixin:
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def llamar(self, *args):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def escribir_config(self, data, nombre="config.json"):
        path = self.tmp / nombre
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)


class ValidateConfigTests(ComandoTestMixin, SimpleTestCase):
    def test_configuracion_valida(self):
        path = self.escribir_config({"experiments": []})
        self.assertIn("Configuración válida", self.llamar("validate_config", f"--config={path}"))

    def test_configuracion_invalida(self):
        path = self.escribir_config({"gauge": {"kind": "power", "c": 0.6}})
        with self.assertRaises(CommandError) as ctx:
            self.llamar("validate_config", f"--config={path}")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_json_ilegible(self):
        path = self.tmp / "malo.json"
        path.write_text("{", encoding="utf-8")
        with self.assertRaises(CommandError) as ctx:
            self.llamar("validate_config", f"--config={path}")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_archivo_inexistente(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("validate_config", f"--config={self.tmp / 'no_existe.json'}")
        self.assertEqual(ctx.exception.returncode, 2)


class SeqTests(ComandoTestMixin, SimpleTestCase):
    def test_binario(self):
        out = self.tmp / "grs.bin"
        data = json.loads(self.llamar("seq", "--kind=grs", "--n1=8", f"--out={out}"))
        self.assertEqual(data["sequence"], "grs")
        self.assertEqual(len(data["sha256"]), 64)
        buf = read_sequence_binary(out)
        self.assertEqual(buf.values.real.tolist(), [1, 1, 1, -1, 1, 1, -1, 1])

    def test_csv(self):
        out = self.tmp / "tm.csv"
        self.llamar("seq", "--kind=thue_morse", "--n1=4", "--format=csv", f"--out={out}")
        meta, rows = read_csv(out)
        self.assertEqual(meta["multiplier"], "thue_morse")
        self.assertEqual([row["re"] for row in rows], ["1", "-1", "-1", "1"])

    def test_cuadratica_sin_alfa(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("seq", "--kind=quadratic", "--n1=4", f"--out={self.tmp / 'q.bin'}")
        self.assertEqual(ctx.exception.returncode, 2)


class WeightsTests(ComandoTestMixin, SimpleTestCase):
    def test_tabla_json(self):
        data = json.loads(self.llamar("weights", *WEIGHT_ARGS, "--R=10,20"))
        self.assertEqual(len(data["rows"]), 2)
        self.assertAlmostEqual(data["rows"][0]["nu"], 99.0, places=9)
        self.assertAlmostEqual(data["rows"][0]["sigma"], 200.0, places=9)

    def test_tabla_csv(self):
        out = self.tmp / "w.csv"
        self.llamar("weights", *WEIGHT_ARGS, "--R=10", f"--out={out}")
        meta, rows = read_csv(out)
        self.assertEqual(meta["weight"], "log_family")
        self.assertEqual(len(rows), 1)

    def test_radio_fuera_de_dominio(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("weights", *WEIGHT_ARGS, "--R=1")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_peso_sin_alfa(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("weights", "--family=log_family", "--R=10")
        self.assertEqual(ctx.exception.returncode, 2)


class CorrTests(ComandoTestMixin, SimpleTestCase):
    def test_thue_morse(self):
        data = json.loads(self.llamar("corr", "--kind=thue_morse", "--x=1024", "--h=0,1"))
        rows = {row["h"]: row for row in data["rows"]}
        self.assertAlmostEqual(rows[0]["re"], 1.0)
        self.assertAlmostEqual(rows[1]["model"], -1 / 3)
        self.assertAlmostEqual(rows[1]["re"], -1 / 3, delta=0.01)


class EquidistTests(ComandoTestMixin, SimpleTestCase):
    def test_gauge_y_gauss(self):
        data = json.loads(
            self.llamar(
                "equidist", *WEIGHT_ARGS, "--gauge=power", "--gauge-c=0.25", "--R=10", "--lattice-r=10"
            )
        )
        self.assertEqual(data["lattice"]["count"], 317)
        self.assertTrue(data["lattice"]["pass"])
        self.assertAlmostEqual(data["rho"][0]["rho"], 2.6592, delta=1e-3)

    def test_gauge_fuera_de_rango(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("equidist", *WEIGHT_ARGS, "--gauge=power", "--gauge-c=0.6", "--R=10")
        self.assertEqual(ctx.exception.returncode, 2)


class ZerosTests(ComandoTestMixin, SimpleTestCase):
    def test_region_requerida(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("zeros", *WEIGHT_ARGS, "--kind=grs")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_capacidad_insuficiente(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar("zeros", *WEIGHT_ARGS, "--kind=grs", "--R=10", "--max-index=100")
        self.assertEqual(ctx.exception.returncode, 3)

    @tag("slow")
    def test_conteo_en_disco(self):
        data = json.loads(self.llamar("zeros", *WEIGHT_ARGS, "--kind=grs", "--R=10"))
        report = data["report"]
        self.assertAlmostEqual(report["gamma_mass"], 99.0, places=9)
        self.assertGreaterEqual(report["count"], 0)
        self.assertGreaterEqual(report["samples"], 256)


class RunTests(ComandoTestMixin, TestCase):
    def setUp(self):
        super().setUp()
        lab = {**settings.CEROSLAB, "CONSTANTS_FILE": None, "OUTPUT_DIR": str(self.tmp)}
        self.override = override_settings(CEROSLAB=lab)
        self.override.enable()

    def tearDown(self):
        self.override.disable()
        super().tearDown()

    def test_linea_base(self):
        path = self.escribir_config(
            {
                "name": "gauss",
                "experiments": [
                    {"kind": "lattice_baseline", "params": {"regions": [{"kind": "disk", "r": 10.0}]}}
                ],
            }
        )
        out = self.tmp / "salida"
        salida = self.llamar("run", f"--config={path}", f"--out={out}")
        self.assertIn("lattice_baseline", salida)
        self.assertTrue((out / "resumen.json").exists())
        self.assertEqual(Experimento.objects.get().estado, "completado")

    def test_sin_persistencia(self):
        path = self.escribir_config({"experiments": []})
        self.assertIn("Sin experimentos.", self.llamar("run", f"--config={path}", "--no-persist"))
        self.assertEqual(Experimento.objects.count(), 0)

    def test_hilos_invalidos(self):
        path = self.escribir_config({"experiments": []})
        with self.assertRaises(CommandError) as ctx:
            self.llamar("run", f"--config={path}", "--threads=0")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_configuracion_invalida(self):
        path = self.escribir_config({"version": 2})
        with self.assertRaises(CommandError) as ctx:
            self.llamar("run", f"--config={path}")
        self.assertEqual(ctx.exception.returncode, 2)
