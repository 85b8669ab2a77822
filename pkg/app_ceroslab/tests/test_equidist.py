import math

import numpy as np
from django.test import SimpleTestCase, tag
from scipy import integrate

from app_ceroslab.numerics import equidist as eq
from app_ceroslab.numerics.errors import CoverageError, DomainError, GaugeUndefinedError
from app_ceroslab.numerics.regions import AnnulusSector, Disk, Rectangle
from app_ceroslab.numerics.weights import SmoothWeight
from app_ceroslab.numerics.zeros import ZeroCountReport


class GaugeTests(SimpleTestCase):
    def setUp(self):
        self.w = SmoothWeight.log_family(0.5)

    def test_valores_en_r_diez(self):
        self.assertAlmostEqual(eq.RadialGauge.power(self.w, 0.25).rho(10.0), 2.6592, delta=1e-3)
        self.assertAlmostEqual(eq.RadialGauge.sqrt_log(self.w).rho(10.0), 1.6280, delta=1e-3)
        self.assertEqual(eq.RadialGauge.constant(math.sqrt(2)).rho(10.0), math.sqrt(2))

    def test_vectorizado(self):
        gauge = eq.RadialGauge.power(self.w, 0.25)
        out = gauge.rho(np.array([10.0, 20.0]))
        self.assertEqual(out.shape, (2,))
        self.assertAlmostEqual(out[0], gauge.rho(10.0))

    def test_indefinido_dentro_del_disco_unidad(self):
        with self.assertRaises(GaugeUndefinedError):
            eq.RadialGauge.sqrt_log(self.w).rho(1.0)

    def test_parametros_invalidos(self):
        with self.assertRaises(DomainError):
            eq.RadialGauge.power(self.w, 0.6)
        with self.assertRaises(DomainError):
            eq.RadialGauge.constant(0.0)
        with self.assertRaises(DomainError):
            eq.RadialGauge(eq.GaugeKind.SQRT_LOG)

    def test_gauge_recomendado(self):
        gauge = eq.recommended_gauge("grs", self.w)
        self.assertEqual(gauge.kind, eq.GaugeKind.POWER)
        self.assertEqual(gauge.c, 0.3)
        self.assertEqual(eq.recommended_gauge("quadratic", self.w).kind, eq.GaugeKind.DIOPHANTINE)
        self.assertEqual(eq.recommended_gauge("quadratic", self.w, b=1.0).c, 1 / 3)
        self.assertEqual(eq.recommended_gauge("thue_morse", self.w).kind, eq.GaugeKind.EXP_SQRT)

    def test_gauge_recomendado_fuera_de_rango(self):
        with self.assertRaises(DomainError):
            eq.recommended_gauge("squarefree", self.w, c=0.2)
        with self.assertRaises(DomainError):
            eq.recommended_gauge("constant", self.w)

    def test_variacion_lenta(self):
        self.assertEqual(eq.RadialGauge.constant(1.0).slow_variation_threshold(100.0), 1.0)
        threshold = eq.RadialGauge.sqrt_log(self.w).slow_variation_threshold(1e4)
        self.assertIsNotNone(threshold)


class MetricaTests(SimpleTestCase):
    def setUp(self):
        self.gauge = eq.RadialGauge.sqrt_log(SmoothWeight.log_family(0.5))

    def test_distancia_nula(self):
        self.assertEqual(eq.d_rho(self.gauge, 3 + 4j, 3 + 4j), 0.0)

    def test_gauge_constante(self):
        gauge = eq.RadialGauge.constant(2.0)
        self.assertAlmostEqual(eq.d_rho(gauge, 0j, 3 + 4j), 2.5)

    def test_camino_radial(self):
        expected, _ = integrate.quad(lambda s: 1.0 / self.gauge.rho(s), 5.0, 10.0)
        self.assertAlmostEqual(eq.d_rho(self.gauge, 5.0, 10.0), expected, places=6)

    def test_simetria(self):
        a, b = 4 + 3j, -6 + 8j
        self.assertEqual(eq.d_rho(self.gauge, a, b), eq.d_rho(self.gauge, b, a))

    def test_segmento_que_cruza_el_disco_unidad(self):
        d = eq.d_rho(self.gauge, 10.0, -10.0)
        self.assertTrue(math.isfinite(d))
        self.assertGreater(d, 0.0)
        # media vuelta sobre |w| = 10 es un camino admisible
        self.assertLessEqual(d, self.gauge.angular_scale(10.0) * math.pi + 1e-9)

    def test_geodesica_no_supera_al_segmento(self):
        segmento = eq._path_length(self.gauge, [10.0 + 0j, 10j])
        self.assertLessEqual(eq.d_rho(self.gauge, 10.0, 10j), segmento + 1e-9)

    def test_punto_cerca_del_disco_unidad(self):
        d = eq.d_rho(self.gauge, 1.1, 10.0)
        self.assertTrue(math.isfinite(d))
        self.assertGreater(d, 0.0)

    def test_desigualdad_triangular_en_ternas_fijas(self):
        ternas = [(10.0, 10j, -10.0), (5 + 5j, 30.0, -20 + 1j), (12.0, 12 * np.exp(2j), 40j)]
        for a, b, c in ternas:
            with self.subTest(a=a, b=b, c=c):
                ab = eq.d_rho(self.gauge, a, b)
                bc = eq.d_rho(self.gauge, b, c)
                ac = eq.d_rho(self.gauge, a, c)
                self.assertLessEqual(ac, ab + bc + 1e-6)

    @tag("slow")
    def test_axiomas_en_ternas_aleatorias(self):
        rng = np.random.default_rng(20240611)
        for _ in range(1000):
            r = rng.uniform(5.0, 40.0, size=3)
            a, b, c = r * np.exp(2j * np.pi * rng.random(3))
            ab = eq.d_rho(self.gauge, a, b)
            self.assertLessEqual(abs(ab - eq.d_rho(self.gauge, b, a)), 1e-12)
            self.assertLessEqual(
                eq.d_rho(self.gauge, a, c), ab + eq.d_rho(self.gauge, b, c) + 1e-6
            )

    def test_gauge_localmente_constante(self):
        rng = np.random.default_rng(7)
        gauges = [self.gauge, eq.RadialGauge.power(SmoothWeight.log_family(0.5), 0.25)]
        for gauge in gauges:
            for _ in range(200):
                w = rng.uniform(20.0, 200.0) * np.exp(2j * np.pi * rng.random())
                rho_w = float(gauge.rho(abs(w)))
                z = w + rho_w * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
                cociente = float(gauge.rho(abs(z))) / rho_w
                self.assertGreaterEqual(cociente, 0.8)
                self.assertLessEqual(cociente, 1.25)


class VecindadDelBordeTests(SimpleTestCase):
    def setUp(self):
        self.w = SmoothWeight.log_family(0.5)
        self.gauge = eq.RadialGauge.power(self.w, 0.25)

    def test_circunferencia_de_radio_diez(self):
        nb = eq.boundary_neighborhood(self.gauge, Disk(10.0), 1.0)
        self.assertAlmostEqual(nb.mass, 212.7, delta=0.1)
        # el proxy 4τρσ/R coincide con la masa de la banda
        self.assertAlmostEqual(nb.ratio, 1.0, delta=0.01)
        self.assertFalse(nb.flagged)

    def test_sector(self):
        nb = eq.boundary_neighborhood(self.gauge, AnnulusSector(5.0, 10.0, 0.0, 0.25), 0.5)
        self.assertGreater(nb.mass, 0.0)
        self.assertTrue(math.isfinite(nb.mass))

    def test_crece_con_tau(self):
        small = eq.boundary_neighborhood_mass(self.gauge, AnnulusSector(5.0, 10.0, 0.0, 0.25), 0.25)
        large = eq.boundary_neighborhood_mass(self.gauge, AnnulusSector(5.0, 10.0, 0.0, 0.25), 0.5)
        self.assertLess(small, large)

    def test_sector_monotono_en_tau(self):
        gauge = eq.RadialGauge.sqrt_log(self.w)
        sector = AnnulusSector(15.0, 25.0, 0.1, 0.3)
        masas = [eq.boundary_neighborhood_mass(gauge, sector, tau) for tau in (0.5, 1, 2, 4, 8, 16)]
        for menor, mayor in zip(masas, masas[1:]):
            self.assertLessEqual(menor, mayor)
        self.assertTrue(all(math.isfinite(m) and m > 0 for m in masas))

    def test_sector_que_cruza_el_angulo_cero(self):
        gauge = eq.RadialGauge.sqrt_log(self.w)
        cruzado = eq.boundary_neighborhood_mass(gauge, AnnulusSector(15.0, 25.0, 0.9, 1.1), 1.0)
        centrado = eq.boundary_neighborhood_mass(gauge, AnnulusSector(15.0, 25.0, 0.4, 0.6), 1.0)
        self.assertAlmostEqual(cruzado, centrado, delta=1e-6 * centrado)

    def test_disco_descentrado(self):
        nb = eq.boundary_neighborhood(self.gauge, Disk(2.0, 20 + 0j), 0.1)
        self.assertGreater(nb.mass, 0.0)
        self.assertFalse(nb.flagged)

    def test_parametros_invalidos(self):
        with self.assertRaises(DomainError):
            eq.boundary_neighborhood(self.gauge, Disk(10.0), 0.0)
        with self.assertRaises(DomainError):
            eq.boundary_neighborhood(self.gauge, AnnulusSector(5.0, 10.0, 0.2, 0.2), 1.0)
        with self.assertRaises(DomainError):
            eq.boundary_neighborhood(eq.RadialGauge.constant(1.0), Disk(10.0), 1.0)


class InformeDeDiscrepanciaTests(SimpleTestCase):
    def setUp(self):
        self.w = SmoothWeight.log_family(0.5)
        self.gauge = eq.RadialGauge.power(self.w, 0.25)

    def _report(self, count, gamma=99.0):
        return ZeroCountReport(Disk(10.0), count, gamma, 1.0, 0)

    def test_conteo_igual_a_gamma_pasa(self):
        report = eq.equidist_report([self._report(99)], self.gauge, 1.0, 1.0)
        self.assertTrue(report.passed)
        self.assertEqual(report.min_C, 0.0)
        self.assertEqual(report.summary()["passed"], 1)

    def test_conteo_diez_veces_mayor_falla(self):
        report = eq.equidist_report([self._report(990)], self.gauge, 1.0, 1.0)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.min_C, 891 / report.rows[0].neighborhood)
        self.assertFalse(report.rows[0].to_dict()["pass"])

    def test_fila_sin_gamma(self):
        with self.assertRaises(DomainError):
            eq.equidist_report([self._report(99, gamma=None)], self.gauge, 1.0, 1.0)


class RedGaussTests(SimpleTestCase):
    def test_disco_de_radio_diez(self):
        check = eq.gauss_lattice_check(Disk(10.0))
        self.assertEqual(check.count, 317)
        self.assertAlmostEqual(check.area, 314.159, places=3)
        self.assertAlmostEqual(check.bound, 177.7, delta=0.05)
        self.assertTrue(check.passed)

    def test_cuadrado_unidad(self):
        check = eq.gauss_lattice_check(Rectangle(0.0, 1.0, 0.0, 1.0))
        self.assertEqual(check.count, 1)
        self.assertEqual(check.area, 1.0)
        self.assertTrue(check.passed)

    def test_disco_pequeño(self):
        self.assertEqual(eq.lattice_count(Disk(0.4)), 1)
        self.assertEqual(eq.lattice_count(Disk(0.4, 0.5 + 0.5j)), 0)

    def test_discos_aleatorios(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            center = complex(*rng.uniform(-30, 30, size=2))
            check = eq.gauss_lattice_check(Disk(float(rng.uniform(0.5, 50)), center))
            self.assertTrue(check.passed)

    def test_region_no_admitida(self):
        with self.assertRaises(DomainError):
            eq.lattice_count(AnnulusSector(1.0, 2.0))


class TransporteTests(SimpleTestCase):
    def setUp(self):
        self.gauge = eq.RadialGauge.constant(math.sqrt(2))
        rng = np.random.default_rng(3)
        self.disks = [
            Disk(float(rng.uniform(1, 20)), complex(*rng.uniform(-10, 10, size=2)))
            for _ in range(50)
        ]

    def test_reticulo_contra_lebesgue(self):
        report = eq.transport_check(
            self.disks, eq.lattice_count, self.gauge, reference=eq.lattice_area
        )
        self.assertTrue(report.finite)
        self.assertLessEqual(report.tau_min, 1.01)
        self.assertEqual(report.to_dict()["regions"], 50)

    def test_medidas_identicas(self):
        report = eq.transport_check(
            self.disks, eq.lattice_area, self.gauge, reference=eq.lattice_area
        )
        self.assertEqual(report.tau_min, 0.0)

    def test_fuera_del_dominio(self):
        with self.assertRaises(CoverageError):
            eq.transport_check(
                [Disk(4.0)],
                eq.lattice_count,
                self.gauge,
                reference=eq.lattice_area,
                domain_radius=5.0,
            )

    def test_ampliacion(self):
        wide = eq.enlarge(self.gauge, Disk(3.0), 1.0)
        self.assertAlmostEqual(wide.r, 3.0 + math.sqrt(2))
        self.assertEqual(eq.enlarge(self.gauge, Disk(3.0), 0.0), Disk(3.0))
        sector = eq.enlarge(self.gauge, AnnulusSector(5.0, 10.0, 0.0, 0.25), 1.0)
        self.assertLess(sector.r1, 5.0)
        self.assertGreater(sector.r2, 10.0)
        self.assertLess(sector.theta1, 0.0)
