import math

import mpmath
import numpy as np
from django.test import SimpleTestCase, tag

from app_ceroslab.numerics.arithmetic import (
    compensated_cumsum,
    compensated_sum,
    dd_from_string,
    derive_seed,
    hash64,
    prime_sieve,
    quadratic_phase_turns,
    squarefree_mask,
    two_prod,
    two_sum,
)
from app_ceroslab.numerics.errors import CapacityError, DomainError, RangeError
from app_ceroslab.numerics.sequences import (
    MAX_BUFFER_LENGTH,
    Multiplier,
    MultiplierKind,
    SequenceBuffer,
    generate,
    grs_value,
    quad_phase,
    sqfree_value,
    tm_value,
)

SQRT2_TEXT = "1.4142135623730950488016887242096980785696718753769480731766797"


class FamiliasDeterministasTests(SimpleTestCase):
    def test_rudin_shapiro(self):
        values = generate("grs", 0, 8).values.real
        np.testing.assert_array_equal(values, [1, 1, 1, -1, 1, 1, -1, 1])

    def test_rudin_shapiro_cumple_la_recursion(self):
        values = generate("grs", 0, 2048).values.real
        for n in range(1, 1024):
            self.assertEqual(values[2 * n], values[n])
            self.assertEqual(values[2 * n + 1], (-1) ** n * values[n])

    def test_thue_morse(self):
        values = generate("thue_morse", 0, 8).values.real
        np.testing.assert_array_equal(values, [1, -1, -1, 1, -1, 1, 1, -1])

    def test_libres_de_cuadrados(self):
        values = generate("squarefree", 1, 13).values.real
        np.testing.assert_array_equal(values, [1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0])

    def test_constante(self):
        values = generate("constant", 17, 40).values
        np.testing.assert_array_equal(values, np.ones(23))

    def test_valores_puntuales(self):
        self.assertEqual(grs_value(3), -1)
        self.assertEqual(tm_value(5), 1)
        self.assertEqual(sqfree_value(12), 0)
        self.assertEqual(sqfree_value(1), 1)

    def test_valores_puntuales_coinciden_con_el_buffer(self):
        grs = generate("grs", 100, 300).values.real
        tm = generate("thue_morse", 100, 300).values.real
        sq = generate("squarefree", 100, 300).values.real
        for i, n in enumerate(range(100, 300)):
            self.assertEqual(grs[i], grs_value(n))
            self.assertEqual(tm[i], tm_value(n))
            self.assertEqual(sq[i], sqfree_value(n))

    def test_densidad_de_libres_de_cuadrados(self):
        X = 10**6
        density = np.count_nonzero(squarefree_mask(1, X + 1)) / X
        self.assertLessEqual(abs(density - 6 / math.pi**2), 2 / math.sqrt(X))

    def test_el_indice_cero_no_es_libre_de_cuadrados(self):
        self.assertFalse(squarefree_mask(0, 5)[0])


class FamiliasAleatoriasTests(SimpleTestCase):
    def test_reproducible_por_subrangos(self):
        full = generate("iid_steinhaus", 0, 1000, seed=42).values
        part = generate("iid_steinhaus", 400, 600, seed=42).values
        np.testing.assert_array_equal(full[400:600], part)

    def test_semillas_distintas_dan_secuencias_distintas(self):
        a = generate("iid_rademacher", 0, 256, seed=1).values
        b = generate("iid_rademacher", 0, 256, seed=2).values
        self.assertFalse(np.array_equal(a, b))

    def test_rademacher_y_steinhaus_tienen_modulo_uno(self):
        rad = generate("iid_rademacher", 0, 500, seed=3).values
        self.assertTrue(set(rad.real.tolist()) <= {-1.0, 1.0})
        stein = generate("iid_steinhaus", 0, 500, seed=3).values
        np.testing.assert_allclose(np.abs(stein), 1.0)

    def test_gaussiana_compleja_tiene_segundo_momento_unitario(self):
        values = generate("iid_gaussian", 0, 200_000, seed=5).values
        self.assertAlmostEqual(float(np.mean(np.abs(values) ** 2)), 1.0, delta=0.02)

    def test_multiplicativa_aleatoria(self):
        mult = Multiplier(MultiplierKind.RAND_MULT, base="steinhaus")
        values = generate(mult, 0, 200, seed=9).values
        self.assertEqual(values[0], 0)
        self.assertEqual(values[1], 1)
        self.assertEqual(values[4], 0)
        self.assertAlmostEqual(values[6], values[2] * values[3])
        self.assertAlmostEqual(values[35], values[5] * values[7])

    def test_multiplicativa_completa(self):
        mult = Multiplier(MultiplierKind.RAND_COMPL_MULT, base="rademacher")
        values = generate(mult, 0, 200, seed=9).values
        self.assertAlmostEqual(values[4], values[2] ** 2)
        self.assertAlmostEqual(values[12], values[4] * values[3])

    def test_multiplicativa_desde_n0_positivo_coincide(self):
        mult = Multiplier(MultiplierKind.RAND_MULT, base="steinhaus")
        full = generate(mult, 0, 300, seed=4).values
        part = generate(mult, 150, 300, seed=4).values
        np.testing.assert_allclose(full[150:], part)

    def test_base_invalida(self):
        with self.assertRaises(DomainError):
            Multiplier(MultiplierKind.RAND_MULT, base="gauss")

    def test_semillas_derivadas_son_distintas(self):
        seeds = {derive_seed(7, trial) for trial in range(100)}
        self.assertEqual(len(seeds), 100)

    def test_hash_depende_solo_de_semilla_e_indice(self):
        self.assertEqual(int(hash64(1, 5)), int(hash64(1, np.arange(10))[5]))


@tag("slow")
class PropiedadesDeSecuenciasTests(SimpleTestCase):
    def test_multiplicatividad_en_pares_coprimos(self):
        rng = np.random.default_rng(12)
        limit = 10**5
        buffers = [
            generate(Multiplier(MultiplierKind.RAND_MULT, base="steinhaus"), 0, limit + 1, seed=2).values,
            generate(Multiplier(MultiplierKind.RAND_COMPL_MULT, base="rademacher"), 0, limit + 1, seed=2).values,
            generate("squarefree", 0, limit + 1).values,
        ]
        pares = 0
        while pares < 1000:
            a = int(rng.integers(1, limit + 1))
            b = int(rng.integers(1, limit // a + 1))
            if math.gcd(a, b) != 1:
                continue
            pares += 1
            for values in buffers:
                self.assertAlmostEqual(values[a * b], values[a] * values[b], places=12, msg=f"a={a} b={b}")

    def test_valores_puntuales_en_indices_aleatorios(self):
        rng = np.random.default_rng(13)
        n1 = 10**6
        grs = generate("grs", 0, n1).values.real
        tm = generate("thue_morse", 0, n1).values.real
        sq = generate("squarefree", 0, n1).values.real
        for n in rng.integers(1, n1, size=10**4).tolist():
            self.assertEqual(grs[n], grs_value(n))
            self.assertEqual(tm[n], tm_value(n))
            self.assertEqual(sq[n], sqfree_value(n))


class BufferTests(SimpleTestCase):
    def test_rango_invalido(self):
        with self.assertRaises(DomainError):
            generate("constant", 10, 10)
        with self.assertRaises(DomainError):
            generate("constant", -1, 10)

    def test_rango_demasiado_largo(self):
        with self.assertRaises(CapacityError):
            generate("constant", 0, MAX_BUFFER_LENGTH + 1)

    def test_ventana_fuera_del_buffer(self):
        buf = generate("thue_morse", 10, 20)
        self.assertEqual(len(buf.window(12, 15)), 3)
        with self.assertRaises(RangeError):
            buf.window(5, 15)

    def test_buffer_de_solo_lectura(self):
        buf = SequenceBuffer.explicit([1, 2, 3])
        with self.assertRaises(ValueError):
            buf.values[0] = 5
        self.assertEqual(buf.label, "explicit")
        self.assertEqual(buf[2], 3 + 0j)


class FaseCuadraticaTests(SimpleTestCase):
    def test_alfas_racionales(self):
        self.assertAlmostEqual(quad_phase(0.25, 2), 1.0 + 0j)
        self.assertAlmostEqual(quad_phase(0.5, 3), -1.0 + 0j)

    def test_multiplicador_desde_cadena(self):
        mult = Multiplier.quadratic(SQRT2_TEXT)
        self.assertAlmostEqual(mult.alpha, math.sqrt(2), places=15)
        self.assertNotEqual(mult.alpha_lo, 0.0)

    def test_fase_contra_oraculo_de_alta_precision(self):
        hi, lo = dd_from_string(SQRT2_TEXT)
        n = np.array([10**6, 123_456_789, 10**9, 3_000_000_000], dtype=np.int64)
        phases = quadratic_phase_turns(hi, lo, n)
        with mpmath.workdps(80):
            alpha = mpmath.mpf(SQRT2_TEXT)
            for k, phase in zip(n.tolist(), phases):
                exact = float(mpmath.frac(alpha * k * k))
                diff = abs(phase - exact)
                self.assertLessEqual(min(diff, 1 - diff), 2.0**-40)

    def test_indices_fuera_de_rango(self):
        with self.assertRaises(DomainError):
            quadratic_phase_turns(0.5, 0.0, np.array([-1]))

    @tag("slow")
    def test_secuencia_cuadratica_concuerda_con_valores_puntuales(self):
        buf = generate(Multiplier.quadratic(SQRT2_TEXT), 10**6, 10**6 + 50)
        for i in range(0, 50, 7):
            self.assertAlmostEqual(buf.values[i], quad_phase(SQRT2_TEXT, 10**6 + i), places=12)


class AritmeticaTests(SimpleTestCase):
    def test_suma_compensada(self):
        values = np.array([1e16, 1.0, -1e16])
        self.assertEqual(compensated_sum(values), 1.0)
        self.assertEqual(compensated_sum(np.array([1e16 + 0j, 1j, -1e16])), 1j)

    def test_sumas_prefijas_compensadas(self):
        prefix = compensated_cumsum(np.array([1e16, 1.0, -1e16, 1.0]))
        self.assertEqual(prefix[2:].tolist(), [1.0, 2.0])
        self.assertEqual(np.cumsum([1e16, 1.0, -1e16, 1.0])[2:].tolist(), [0.0, 1.0])
        complejas = compensated_cumsum(np.array([1e16j, 1j, -1e16j]))
        self.assertEqual(complejas[-1], 1j)
        self.assertEqual(compensated_cumsum(np.array([])).size, 0)

    def test_transformaciones_exactas(self):
        s, err = two_sum(1e16, 1.0)
        self.assertEqual(s + err, 1e16 + 1.0)
        self.assertEqual(err, 1.0 - ((1e16 + 1.0) - 1e16))
        p, err = two_prod(1.0 + 2**-30, 1.0 + 2**-30)
        self.assertEqual(p, 1.0 + 2**-29)
        self.assertEqual(err, 2.0**-60)

    def test_criba(self):
        self.assertEqual(prime_sieve(30).tolist(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
        self.assertEqual(prime_sieve(1).size, 0)
