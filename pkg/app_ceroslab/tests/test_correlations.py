import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, tag

from app_ceroslab.numerics import correlations as corr
from app_ceroslab.numerics.errors import DomainError, PreconditionError, RangeError
from app_ceroslab.numerics.sequences import Multiplier, SequenceBuffer, generate
from app_ceroslab.numerics.weights import SmoothWeight
from app_ceroslab.services.experiments import exact_rademacher_zero_probability

SQRT2_TEXT = "1.4142135623730950488016887242096980785696718753769480731766797"


class CorrelacionEmpiricaTests(SimpleTestCase):
    def test_constante(self):
        seq = generate("constant", 0, 100)
        self.assertAlmostEqual(corr.autocorr(seq, 50, 3), 1.0)

    def test_buffer_insuficiente(self):
        seq = generate("constant", 0, 10)
        with self.assertRaises(RangeError):
            corr.autocorr(seq, 10, 1)

    def test_parametros_invalidos(self):
        seq = generate("constant", 0, 10)
        with self.assertRaises(DomainError):
            corr.autocorr(seq, 0, 1)

    @tag("slow")
    def test_thue_morse_converge_a_menos_un_tercio(self):
        X = 2**20
        seq = generate("thue_morse", 0, X + 2)
        value = corr.autocorr(seq, X, 1).real
        self.assertAlmostEqual(value, -1 / 3, delta=64 * math.log(X) / X)

    @tag("slow")
    def test_libres_de_cuadrados_en_h_cero(self):
        X = 10**6
        seq = generate("squarefree", 0, X + 1)
        self.assertAlmostEqual(corr.autocorr(seq, X, 0).real, 0.607927, delta=0.005)

    def test_cota_de_mahler_thue_morse(self):
        x = 2**14
        seq = generate("thue_morse", 0, x + 40)
        for h in range(0, 33):
            empirical = corr.correlation_sum(seq, 0, x - 1, h).real
            model = float(corr.tm_sigma(h)) * x
            self.assertLessEqual(abs(empirical - model), 8 * max(h, 1) * math.log(x + 1))


class SumaMaximaTests(SimpleTestCase):
    def test_constante(self):
        seq = generate("constant", 0, 20)
        self.assertEqual(corr.s_star(seq, 0, 10, 1), 11.0)

    def test_un_solo_termino(self):
        seq = generate("iid_steinhaus", 0, 20, seed=1)
        self.assertLessEqual(corr.s_star(seq, 5, 5, 2), 1.0 + 1e-12)

    def test_fase_cuadratica_acotada(self):
        seq = generate(Multiplier.quadratic(SQRT2_TEXT), 0, 11_002)
        value = corr.s_star(seq, 10_000, 11_000, 1)
        dist = (2 * math.sqrt(2)) % 1.0
        chord = abs(1 - np.exp(-2j * math.pi * dist))
        self.assertLessEqual(value, 2 / chord + 1e-9)

    def test_perfil(self):
        seq = generate("constant", 0, 30)
        np.testing.assert_allclose(corr.s_star_profile(seq, 0, 10, 3), [11.0, 11.0, 11.0])


    def test_sufijos_coinciden_con_suma_exacta(self):
        seq = generate("iid_steinhaus", 0, 3000, seed=4)
        values = seq.values
        products = values[100:2001] * np.conj(values[103:2004])
        exact = max(
            abs(complex(math.fsum(products[k:].real), math.fsum(products[k:].imag)))
            for k in range(products.size)
        )
        self.assertAlmostEqual(corr.s_star(seq, 100, 2000, 3), exact, delta=1e-12 * exact)
    def test_rango_invalido(self):
        seq = generate("constant", 0, 30)
        with self.assertRaises(DomainError):
            corr.s_star(seq, 5, 4, 1)


class ConstantesDeCorrelacionTests(SimpleTestCase):
    def test_mirsky(self):
        self.assertEqual(corr.mirsky_D(0), 6 / math.pi**2)
        D = corr.mirsky_D(1)
        self.assertAlmostEqual(D, 0.3226341, delta=2e-6)
        self.assertAlmostEqual(corr.mirsky_D(4), 1.5 * D, places=12)
        self.assertAlmostEqual(corr.mirsky_D(2), D, places=12)

    def test_mirsky_dominio(self):
        with self.assertRaises(DomainError):
            corr.mirsky_D(-1)
        with self.assertRaises(DomainError):
            corr.mirsky_D(1, prime_cutoff=100)

    def test_thue_morse_exacta(self):
        self.assertEqual(corr.tm_sigma(0), Fraction(1))
        self.assertEqual(corr.tm_sigma(1), Fraction(-1, 3))
        self.assertEqual(corr.tm_sigma(2), Fraction(-1, 3))
        self.assertEqual(corr.tm_sigma(3), Fraction(1, 3))

    def test_thue_morse_contra_fuerza_bruta(self):
        X = 2**16
        values = generate("thue_morse", 0, X + 16).values.real
        for h in range(0, 9):
            brute = float(np.dot(values[:X], values[h : X + h])) / X
            self.assertAlmostEqual(brute, float(corr.tm_sigma(h)), delta=0.01)


class ModelosEspectralesTests(SimpleTestCase):
    def test_atomos_libres_de_cuadrados(self):
        D = corr.mirsky_product().value
        model = corr.sqfree_atoms(1)
        atoms = model.atoms()
        self.assertEqual(len(atoms), 1)
        self.assertEqual(atoms[0][0], 0)
        self.assertAlmostEqual(atoms[0][1], D)

        model = corr.sqfree_atoms(2)
        atoms = dict(model.atoms())
        self.assertEqual(len(atoms), 4)
        self.assertAlmostEqual(atoms[Fraction(1, 4)], D / 8)
        self.assertAlmostEqual(atoms[Fraction(0)], D + D / 8)

    def test_masa_total_tiende_a_seis_sobre_pi_cuadrado(self):
        model = corr.sqfree_atoms(1000)
        self.assertAlmostEqual(model.total_mass(), 6 / math.pi**2, delta=1e-3)
        self.assertAlmostEqual(model.fourier_coefficient(0), model.total_mass())

    def test_coeficientes_de_fourier_reproducen_mirsky(self):
        model = corr.sqfree_atoms(200)
        for h in (1, 2, 4, 9):
            self.assertAlmostEqual(model.fourier_coefficient(h), corr.mirsky_D(h), delta=0.01)

    def test_masa_de_intervalos(self):
        model = corr.sqfree_atoms(2)
        D = corr.mirsky_product().value
        self.assertAlmostEqual(model.interval_mass(0.2, 0.3), D / 8)
        self.assertAlmostEqual(model.interval_mass(0.0, 1.0), model.total_mass())

    def test_densidad_de_riesz(self):
        self.assertEqual(corr.tm_riesz_density(0.0, 5), 0.0)
        self.assertAlmostEqual(corr.tm_riesz_density(1 / 3, 4), 1.5**4, places=9)
        self.assertAlmostEqual(corr.tm_riesz_density(0.5, 2), 0.0, places=12)

    def test_densidad_empirica(self):
        seq = generate("constant", 0, 4)
        self.assertAlmostEqual(corr.empirical_spectral_density(seq, 4, 0.0), 4.0)
        self.assertAlmostEqual(corr.empirical_spectral_density(seq, 4, 0.25), 0.0, places=12)

    def test_riesz_coincide_con_la_densidad_empirica(self):
        depth = 8
        seq = generate("thue_morse", 0, 2**depth)
        t = np.linspace(0.0, 1.0, 97)
        riesz = corr.tm_riesz_density(t, depth)
        empirical = corr.empirical_spectral_density(seq, 2**depth, t)
        np.testing.assert_allclose(empirical, riesz, rtol=1e-9, atol=1e-9)
        self.assertTrue(np.all(riesz >= 0))

    def test_modelo_de_riesz_integra_a_uno(self):
        model = corr.tm_riesz_model(6)
        self.assertAlmostEqual(model.interval_mass(0.0, 1.0), 1.0, places=8)
        self.assertAlmostEqual(model.fourier_coefficient(1), -1 / 3, delta=0.05)

    def test_lebesgue(self):
        model = corr.lebesgue_model()
        self.assertAlmostEqual(model.interval_mass(0.1, 0.35), 0.25, places=12)
        self.assertEqual(model.fourier_coefficient(3), 0.0)

    def test_intervalo_demasiado_largo(self):
        with self.assertRaises(DomainError):
            corr.lebesgue_model().interval_mass(0.0, 1.5)

    def test_intervalo_centrado_de_thue_morse(self):
        self.assertEqual(corr.tm_centered_interval(2, 1), (0.3125, 0.4375))

    def test_cota_diadica_libres_de_cuadrados(self):
        rows = corr.sqfree_dyadic_bounds(corr.sqfree_atoms(1000), m_max=8, c=0.05)
        self.assertEqual(len(rows), 2 + 4 + 8 + 16 + 32 + 64 + 128 + 256)
        for row in rows:
            self.assertGreaterEqual(row.mass, 0.05 * (row.b - row.a) ** 1.5, msg=f"m={row.m} p={row.p}")
        self.assertTrue(all(row.passed for row in rows))

    def test_cota_diadica_requiere_modelo_atomico(self):
        with self.assertRaises(DomainError):
            corr.sqfree_dyadic_bounds(corr.lebesgue_model())
        with self.assertRaises(DomainError):
            corr.sqfree_dyadic_bounds(corr.sqfree_atoms(10), m_max=0)

    def test_cota_diadica_thue_morse(self):
        rows = corr.tm_dyadic_bounds(m_max=6, extra_depth=6, C=4.0)
        self.assertEqual(len(rows), 126)
        self.assertTrue(all(row.passed for row in rows))
        self.assertLessEqual(corr.tm_fitted_constant(rows), 4.0)
        row = rows[0]
        self.assertEqual((row.m, row.p), (1, 0))
        self.assertEqual((row.a, row.b), corr.tm_centered_interval(1, 0))
        self.assertEqual(row.bound, 2.0**-5)

    def test_modelo_empirico_de_thue_morse(self):
        depth = 6
        empirical = corr.empirical_model(generate("thue_morse", 0, 2**depth), 2**depth)
        riesz = corr.tm_riesz_model(depth)
        for h in range(0, 8):
            self.assertAlmostEqual(empirical.fourier_coefficient(h), riesz.fourier_coefficient(h), places=12)
        self.assertAlmostEqual(empirical.interval_mass(0.0, 1.0), 1.0, places=8)


class CondicionesTests(SimpleTestCase):
    def setUp(self):
        self.w = SmoothWeight.log_family(0.5)

    def test_condicion1_constante(self):
        R = 30.0
        _, sigma = self.w.nu_sigma(R)
        beta = sigma**-0.09
        seq = generate("constant", 0, 4000)
        check = corr.check_condition1(seq, self.w, R, beta)
        self.assertGreaterEqual(check.ratio, 0.5 - 2 / (beta * sigma))
        self.assertLessEqual(check.ratio, 0.51)

    def test_condicion1_thue_morse(self):
        R = 30.0
        _, sigma = self.w.nu_sigma(R)
        beta = sigma**-0.09
        seq = generate("thue_morse", 0, 4000)
        check = corr.check_condition1(seq, self.w, R, beta)
        self.assertAlmostEqual(check.ratio, 0.5, delta=0.01 + 1 / (beta * sigma))

    def test_condicion2_falla_para_la_constante(self):
        R = 20.0
        _, sigma = self.w.nu_sigma(R)
        beta = math.sqrt(math.log(sigma) / sigma)
        seq = generate("constant", 0, 6000)
        check = corr.check_condition2(seq, self.w, R, beta, p=2.0)
        self.assertGreater(check.ratio, 1.0)

    def test_condicion2_requiere_p_mayor_que_uno(self):
        seq = generate("constant", 0, 6000)
        with self.assertRaises(DomainError):
            corr.check_condition2(seq, self.w, 20.0, 0.1, p=1.0)

    def test_suma_diofantica_rechaza_alfa_racional(self):
        with self.assertRaises(DomainError):
            corr.diophantine_sum(0.5, 0.1, 2.0, 10)

    def test_suma_diofantica_positiva(self):
        self.assertGreater(corr.diophantine_sum(math.sqrt(2), 0.1, 2.0, 10), 0.0)

    def test_condiciones_de_no_hueco_libres_de_cuadrados(self):
        sigma = 1e6
        R = math.sqrt(sigma / 2)  # σ(R) = 2R² para α = ½
        beta = sigma**-0.09
        report = corr.check_no_gap_conditions(
            None, self.w, R, beta, 1.1, corr.mirsky_eps1(), corr.sqfree_eps2
        )
        self.assertTrue(report["a"].passed)
        self.assertTrue(report["b"].passed)

    def test_condicion_b_falla_con_beta_grande(self):
        sigma = 1e6
        R = math.sqrt(sigma / 2)
        report = corr.check_no_gap_conditions(
            None, self.w, R, sigma**-0.5, 1.1, corr.mirsky_eps1(), corr.sqfree_eps2
        )
        self.assertFalse(report["b"].passed)
        self.assertFalse(report.passed)

    def test_condiciones_rechazan_parametros(self):
        with self.assertRaises(DomainError):
            corr.check_no_gap_conditions(None, self.w, 10.0, 1.5, 1.1, corr.tm_eps1, corr.tm_eps2())


class MonteCarloTests(SimpleTestCase):
    def test_momento_de_chowla_bajo_la_cota(self):
        result = corr.chowla_moment_mc("rand_mult", 10**4, 0.05, 3, 60, seed=11, a=0.5, b=0.1)
        self.assertEqual(result.trials, 60)
        self.assertFalse(result.low_confidence)
        self.assertLessEqual(result.mean_sq, result.bound)

    def test_diagonal_supera_la_cota(self):
        result = corr.chowla_moment_mc("rand_mult", 10**4, 0.05, 0, 5, seed=11, a=0.5, b=0.1)
        self.assertTrue(result.diagonal)
        self.assertGreater(result.mean_sq, result.bound)

    def test_un_ensayo_es_de_baja_confianza(self):
        result = corr.chowla_moment_mc("rand_mult", 10**3, 0.5, 1, 1, seed=2)
        self.assertTrue(result.low_confidence)
        self.assertEqual(result.trials, 1)
        self.assertEqual(result.std_error, math.inf)

    def test_fuera_del_regimen(self):
        with self.assertRaises(PreconditionError):
            corr.chowla_moment_mc("rand_mult", 10**4, 0.05, 10**3, 10, seed=1)
        with self.assertRaises(PreconditionError):
            corr.chowla_moment_mc("rand_mult", 10**4, 2.0, 1, 10, seed=1)

    def test_familia_no_multiplicativa(self):
        with self.assertRaises(DomainError):
            corr.chowla_moment_mc("iid_steinhaus", 10**4, 0.05, 1, 10, seed=1)

    def test_probabilidad_exacta_de_rademacher(self):
        self.assertEqual(exact_rademacher_zero_probability(8), 70 / 256)
        self.assertEqual(exact_rademacher_zero_probability(7), 0.0)

    def test_anticoncentracion_rademacher(self):
        p = corr.anticoncentration_mc("iid_rademacher", 8, 0.0, 0.5, [0], 4000, seed=3)
        se = math.sqrt(70 / 256 * (1 - 70 / 256) / 4000)
        self.assertAlmostEqual(p, 70 / 256, delta=3 * se + 1e-3)

    def test_anticoncentracion_de_una_variable(self):
        p = corr.anticoncentration_mc("iid_rademacher", 1, 0.0, 0.5, [1], 2000, seed=3)
        self.assertAlmostEqual(p, 0.5, delta=0.05)

    def test_anticoncentracion_requiere_mil_ensayos(self):
        with self.assertRaises(PreconditionError):
            corr.anticoncentration_mc("iid_rademacher", 8, 0.0, 0.5, [0], 999, seed=3)

    def test_malla_vacia(self):
        with self.assertRaises(DomainError):
            corr.anticoncentration_mc("iid_rademacher", 8, 0.0, 0.5, [], 1000, seed=3)

    def test_explicit_buffer_en_correlaciones(self):
        seq = SequenceBuffer.explicit([1, -1, 1, -1, 1, -1])
        self.assertAlmostEqual(corr.autocorr(seq, 4, 1), -1.0)
