import json
import math
import tempfile
from pathlib import Path

from django.conf import settings
from django.test import TestCase, override_settings, tag

from app_ceroslab.models import Experimento
from app_ceroslab.numerics.errors import PreconditionError
from app_ceroslab.numerics.serialization import read_csv
from app_ceroslab.services import runner

LATTICE = {
    "name": "gauss",
    "experiments": [
        {
            "kind": "lattice_baseline",
            "params": {"regions": [{"kind": "disk", "r": 10.0}]},
        }
    ],
}


class EjecucionTests(TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        lab = {**settings.CEROSLAB, "CONSTANTS_FILE": None, "OUTPUT_DIR": str(self.tmp)}
        self.override = override_settings(CEROSLAB=lab)
        self.override.enable()

    def tearDown(self):
        self.override.disable()
        self._tmp.cleanup()

    def test_configuracion_vacia_no_produce_salidas(self):
        out_dir = self.tmp / "vacio"
        ejecucion = runner.run({"experiments": []}, out_dir=out_dir)
        self.assertEqual(ejecucion.resumen, {"experiments": []})
        self.assertEqual(ejecucion.artefactos, [])
        self.assertFalse(out_dir.exists())
        self.assertEqual(Experimento.objects.count(), 0)

    def test_linea_base_de_gauss(self):
        out_dir = self.tmp / "gauss"
        ejecucion = runner.run(LATTICE, out_dir=out_dir, threads=1)
        resumen = json.loads((out_dir / runner.SUMMARY_FILE).read_text(encoding="utf-8"))
        self.assertEqual(resumen["experiments"][0]["summary"]["all_pass"], True)
        self.assertEqual(resumen["_meta"]["seed"], 0)
        self.assertEqual(len(resumen["_meta"]["config_hash"]), 64)

        meta, rows = read_csv(out_dir / "lattice_baseline_lattice.csv")
        self.assertEqual(rows[0]["count"], "317")
        self.assertEqual(meta["experiment"], "lattice_baseline")

        experimento = ejecucion.experimento
        experimento.refresh_from_db()
        self.assertEqual(experimento.nombre, "gauss")
        self.assertEqual(experimento.estado, "completado")
        self.assertEqual(experimento.codigo_salida, 0)
        self.assertEqual(experimento.tipo, "lattice_baseline")
        artefacto = experimento.artefactos.get()
        self.assertEqual(artefacto.formato, "csv")
        self.assertEqual(len(artefacto.sha256), 64)
        self.assertEqual(artefacto.filas, 1)

    def test_directorio_por_defecto_usa_el_hash(self):
        ejecucion = runner.run(LATTICE, persist=False)
        self.assertIsNone(ejecucion.experimento)
        digest = runner.config_hash(runner.load_config(LATTICE))
        self.assertTrue((self.tmp / digest[:12] / runner.SUMMARY_FILE).exists())

    def test_regiones_aleatorias_son_reproducibles(self):
        config = {
            "seed": 5,
            "experiments": [{"kind": "lattice_baseline", "params": {"count": 6, "r_max": 20}}],
        }
        first = runner.run(config, out_dir=self.tmp / "a", persist=False, threads=2)
        second = runner.run(config, out_dir=self.tmp / "b", persist=False, threads=1)
        self.assertEqual(
            [a.sha256 for a in first.artefactos], [a.sha256 for a in second.artefactos]
        )
        self.assertEqual(first.resumen["experiments"][0]["summary"]["regions"], 6)

    def test_semilla_de_la_linea_de_comandos(self):
        ejecucion = runner.run(LATTICE, out_dir=self.tmp / "s", seed=42, persist=False)
        resumen = json.loads((self.tmp / "s" / runner.SUMMARY_FILE).read_text(encoding="utf-8"))
        self.assertEqual(resumen["_meta"]["seed"], 42)
        self.assertEqual(len(ejecucion.artefactos), 1)

    def test_falla_queda_registrada(self):
        config = {
            "sequence": {"kind": "rand_mult"},
            "experiments": [
                {
                    "kind": "correlation_suite",
                    "params": {"mode": "chowla", "x": 10000, "eta": 2.0, "h": [1], "trials": 5},
                }
            ],
        }
        with self.assertRaises(PreconditionError):
            runner.run(config, out_dir=self.tmp / "f")
        experimento = Experimento.objects.get()
        self.assertEqual(experimento.estado, "fallido")
        self.assertEqual(experimento.codigo_salida, 2)
        self.assertTrue(experimento.mensaje_error)

    def test_reutiliza_un_experimento_existente(self):
        existente = Experimento.objects.create(
            nombre="previo", tipo="lote", configuracion={}, hash_configuracion="x", semilla=0
        )
        ejecucion = runner.run(LATTICE, out_dir=self.tmp / "r", experimento=existente)
        self.assertEqual(ejecucion.experimento.pk, existente.pk)
        self.assertEqual(Experimento.objects.count(), 1)
        existente.refresh_from_db()
        self.assertEqual(existente.estado, "completado")
        self.assertEqual(existente.nombre, "previo")


WEIGHT = {"kind": "log_family", "alpha": 0.5}
SQRT2 = "1.4142135623730950488016887242096980785696718753769480731766797"


@tag("slow")
class ExperimentosCompletosTests(TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        lab = {**settings.CEROSLAB, "CONSTANTS_FILE": None, "OUTPUT_DIR": str(self.tmp)}
        self.override = override_settings(CEROSLAB=lab)
        self.override.enable()

    def tearDown(self):
        self.override.disable()
        self._tmp.cleanup()

    def ejecutar(self, config):
        out_dir = self.tmp / "salida"
        ejecucion = runner.run(config, out_dir=out_dir, persist=False, threads=1)
        return ejecucion.resumen["experiments"][0]["summary"], out_dir

    def test_suite_espectral_thue_morse(self):
        config = {
            "sequence": {"kind": "thue_morse"},
            "experiments": [
                {"kind": "spectral_suite", "params": {"depth": 8, "n_t": 20, "m_max": 4}}
            ],
        }
        summary, out_dir = self.ejecutar(config)
        self.assertTrue(summary["dyadic_pass"])
        self.assertLessEqual(summary["dyadic_fitted_C"], summary["dyadic_C"])
        _, rows = read_csv(out_dir / "spectral_suite_dyadic.csv")
        self.assertEqual(len(rows), 2 + 4 + 8 + 16)
        self.assertTrue((out_dir / "spectral_suite_model.json").exists())

    def test_suite_espectral_libres_de_cuadrados(self):
        config = {
            "sequence": {"kind": "squarefree"},
            "experiments": [
                {"kind": "spectral_suite", "params": {"d_max": 1000, "h_max": 4, "x": 10000}}
            ],
        }
        summary, out_dir = self.ejecutar(config)
        self.assertTrue(summary["dyadic_pass"])
        self.assertGreaterEqual(summary["dyadic_min_ratio"], 0.05)
        self.assertLess(summary["mass_error"], 1e-3)
        _, rows = read_csv(out_dir / "spectral_suite_dyadic.csv")
        self.assertEqual(len(rows), 510)

    def test_barrido_de_weyl_con_testigos(self):
        config = {
            "weight": WEIGHT,
            "sequence": {"kind": "quadratic", "alpha": SQRT2},
            "experiments": [
                {
                    "kind": "weyl_scan",
                    "params": {
                        "radii": [10.0],
                        "n_theta": 8,
                        "witness": {"count": 2, "sigma_min": 1000, "sigma_max": 2000, "n_r": 16},
                    },
                }
            ],
        }
        summary, out_dir = self.ejecutar(config)
        self.assertEqual(summary["rows"], 8)
        self.assertEqual(summary["witnesses"], 2)
        _, rows = read_csv(out_dir / "weyl_scan_witness.csv")
        self.assertEqual(len(rows), 2)

    def test_condiciones_de_correlacion(self):
        config = {
            "weight": WEIGHT,
            "sequence": {"kind": "squarefree"},
            "experiments": [
                {"kind": "condition_check", "params": {"radii": [20.0], "eps_model": "mirsky"}}
            ],
        }
        summary, out_dir = self.ejecutar(config)
        self.assertEqual(summary["radii"], 1)
        self.assertTrue(math.isfinite(summary["max_condition1_ratio"]))
        data = json.loads((out_dir / "condition_check_conditions.json").read_text(encoding="utf-8"))
        self.assertIn("no_gap", data["results"][0])

    def test_transporte_del_reticulo(self):
        config = {
            "experiments": [
                {
                    "kind": "transport_check",
                    "params": {
                        "disks": [
                            {"kind": "disk", "r": 5.0, "center": [0.5, 0.3]},
                            {"kind": "disk", "r": 3.0, "center": [-4.0, 7.0]},
                        ]
                    },
                }
            ],
        }
        summary, out_dir = self.ejecutar(config)
        self.assertEqual(summary["measure"], "lattice")
        self.assertTrue(summary["finite"])
        _, rows = read_csv(out_dir / "transport_check_family.csv")
        self.assertEqual(len(rows), 2)

    def test_barrido_de_conteos(self):
        config = {
            "weight": WEIGHT,
            "sequence": {"kind": "iid_steinhaus"},
            "experiments": [
                {"kind": "zero_count_sweep", "params": {"radii": [5.0, 8.0], "seeds": [0, 1]}}
            ],
        }
        summary, out_dir = self.ejecutar(config)
        self.assertEqual(summary["rows"], 4)
        for mean, gamma in zip(summary["means"], (24.0, 63.0)):
            self.assertAlmostEqual(mean["gamma"], gamma, places=9)
        _, rows = read_csv(out_dir / "zero_count_sweep_counts.csv")
        self.assertEqual(len(rows), 4)

    def test_sectores_y_discos_locales(self):
        config = {
            "weight": WEIGHT,
            "sequence": {"kind": "iid_steinhaus"},
            "experiments": [
                {"kind": "sector_equidist", "params": {"r1": 4.0, "r2": 8.0, "sectors": 4}},
                {
                    "kind": "local_disks",
                    "params": {"count": 3, "modulus_min": 10.0, "modulus_max": 15.0, "radius_factor": 2.0},
                },
            ],
        }
        ejecucion = runner.run(config, out_dir=self.tmp / "equidist", persist=False, threads=1)
        sectores, discos = (e["summary"] for e in ejecucion.resumen["experiments"])
        self.assertEqual(sectores["sectors"], 4)
        self.assertAlmostEqual(sectores["total_gamma"], 48.0, places=9)
        self.assertEqual(sectores["discrepancy"]["rows"], 4)
        self.assertEqual(discos["disks"], 3)
        self.assertEqual(discos["discrepancy"]["rows"], 3)
        self.assertTrue(0.0 <= discos["pass_fraction"] <= 1.0)
