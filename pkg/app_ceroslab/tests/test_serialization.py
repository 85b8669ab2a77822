import json
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from app_ceroslab.numerics import correlations as corr
from app_ceroslab.numerics.errors import DomainError
from app_ceroslab.numerics.sequences import Multiplier, SequenceBuffer, generate
from app_ceroslab.numerics.serialization import (
    config_hash,
    format_value,
    read_csv,
    read_sequence_binary,
    to_plain,
    write_csv,
    write_enclosures,
    write_sequence_binary,
    write_sequence_csv,
    write_spectral_model,
)
from app_ceroslab.numerics.zeros import Enclosure

SQRT2_TEXT = "1.4142135623730950488016887242096980785696718753769480731766797"


class SerializacionTests(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_buffer_binario(self):
        buf = generate("grs", 0, 100)
        path = write_sequence_binary(buf, self.tmp / "grs.bin")
        back = read_sequence_binary(path)
        self.assertEqual((back.n0, back.n1, back.seed), (0, 100, 0))
        self.assertEqual(back.label, "grs")
        np.testing.assert_array_equal(back.values, buf.values)

    def test_buffer_binario_conserva_alfa(self):
        buf = generate(Multiplier.quadratic(SQRT2_TEXT), 10, 20)
        back = read_sequence_binary(write_sequence_binary(buf, self.tmp / "q.bin"))
        self.assertEqual(back.multiplier.alpha, buf.multiplier.alpha)
        self.assertEqual(back.multiplier.alpha_lo, buf.multiplier.alpha_lo)

    def test_buffer_explicito(self):
        buf = SequenceBuffer.explicit([1, -1, 1j])
        back = read_sequence_binary(write_sequence_binary(buf, self.tmp / "e.bin"))
        self.assertIsNone(back.multiplier)
        self.assertEqual(back.label, "explicit")

    def test_archivo_binario_invalido(self):
        path = self.tmp / "malo.bin"
        path.write_bytes(b"XY")
        with self.assertRaises(DomainError):
            read_sequence_binary(path)
        path.write_bytes(b"NOPE" + bytes(20))
        with self.assertRaises(DomainError):
            read_sequence_binary(path)

    def test_csv_con_metadatos(self):
        buf = generate("thue_morse", 0, 4)
        rows = write_sequence_csv(buf, self.tmp / "tm.csv", {"seed": 3, "config_hash": "abc"})
        self.assertEqual(rows, 4)
        meta, body = read_csv(self.tmp / "tm.csv")
        self.assertEqual(meta, {"config_hash": "abc", "seed": "3"})
        self.assertEqual(body[0], {"n": "0", "re": "1", "im": "0"})
        self.assertEqual(body[1]["re"], "-1")
        text = (self.tmp / "tm.csv").read_text(encoding="utf-8")
        self.assertTrue(text.startswith("# config_hash=abc\n# seed=3\nn,re,im\n"))

    def test_csv_de_diccionarios(self):
        write_csv(self.tmp / "d.csv", ["a", "b"], [{"a": 1, "b": None}, {"b": 0.5}])
        _, body = read_csv(self.tmp / "d.csv")
        self.assertEqual(body, [{"a": "1", "b": ""}, {"a": "", "b": "0.5"}])

    def test_formato_de_valores(self):
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(np.bool_(False)), "false")
        self.assertEqual(format_value(np.float64(0.1)), "0.10000000000000001")
        self.assertEqual(format_value(None), "")
        self.assertEqual(format_value(np.int64(7)), "7")

    def test_encierros(self):
        path = self.tmp / "zeros.csv"
        write_enclosures([Enclosure(0.5 - 0.25j, 0.01, 2)], path)
        _, body = read_csv(path)
        self.assertEqual(body[0]["re"], "0.5")
        self.assertEqual(body[0]["im"], "-0.25")
        self.assertEqual(body[0]["multiplicity"], "2")
        self.assertEqual(body[0]["resolved"], "true")

    def test_modelo_espectral(self):
        path = write_spectral_model(corr.sqfree_atoms(2), self.tmp / "chi.json", {"seed": 1})
        data = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(data["kind"], "sqfree_atoms")
        self.assertEqual(len(data["atoms"]), 4)
        self.assertEqual(data["_meta"], {"seed": 1})

    def test_hash_canonico(self):
        self.assertEqual(config_hash({"a": 1, "b": [1, 2]}), config_hash({"b": [1, 2], "a": 1}))
        self.assertNotEqual(config_hash({"a": 1}), config_hash({"a": 2}))
        self.assertEqual(len(config_hash({})), 64)

    def test_tipos_nativos(self):
        plain = to_plain({"x": np.float64(1.5), "y": np.arange(3), "z": np.bool_(True)})
        self.assertEqual(plain, {"x": 1.5, "y": [0, 1, 2], "z": True})
        self.assertIs(type(plain["x"]), float)
