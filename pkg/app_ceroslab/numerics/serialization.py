# app_ceroslab/numerics/serialization.py
"""
Formatos de salida: buffers binarios y CSV, modelos espectrales en JSON y las
tablas CSV de ceros y de discrepancia. Los CSV usan '.' como separador decimal
y floats con 17 cifras significativas, sin depender del locale.
"""
import csv
import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from .correlations import MAX_MATERIALIZED_ATOMS
from .errors import DomainError
from .sequences import Multiplier, SequenceBuffer

SEQUENCE_MAGIC = b"CLSQ"
SEQUENCE_FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHI")
MAX_CSV_ROWS = 1_000_000


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"No serializable en JSON: {type(value).__name__}")


def canonical_json(data):
    return json.dumps(
        data, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_json_default
    )


def to_plain(data):
    """Copia con tipos nativos de Python (sin escalares numpy)."""
    return json.loads(canonical_json(data))


def config_hash(config):
    """sha256 del JSON canónico de la configuración."""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def format_value(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


# ---------------------------------------------------------------------------
# Buffers de secuencia
# ---------------------------------------------------------------------------

def write_sequence_binary(buffer, path):
    """
    Escribe un buffer: cabecera {kind, n0, n1, seed} y pares complex64 little-endian.
    """
    header = canonical_json(
        {
            "multiplier": buffer.multiplier.to_dict() if buffer.multiplier else None,
            "n0": buffer.n0,
            "n1": buffer.n1,
            "seed": buffer.seed,
        }
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(SEQUENCE_MAGIC, SEQUENCE_FORMAT_VERSION, len(header)))
        fh.write(header)
        fh.write(buffer.values.astype("<c8").tobytes())
    return Path(path)


def read_sequence_binary(path):
    """
    Raises:
        DomainError: si el archivo no tiene el formato esperado
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise DomainError("Archivo de secuencia truncado", path=str(path))
    magic, version, size = _HEADER.unpack_from(raw)
    if magic != SEQUENCE_MAGIC or version != SEQUENCE_FORMAT_VERSION:
        raise DomainError("Formato de secuencia no reconocido", path=str(path))
    start = _HEADER.size + size
    meta = json.loads(raw[_HEADER.size : start].decode("utf-8"))
    values = np.frombuffer(raw[start:], dtype="<c8").astype(np.complex128)
    multiplier = Multiplier.from_dict(meta["multiplier"]) if meta["multiplier"] else None
    return SequenceBuffer(multiplier, meta["n0"], meta["n1"], values, meta["seed"])


def write_sequence_csv(buffer, path, meta=None):
    """
    CSV (n, re, im) para rangos pequeños.

    Raises:
        DomainError: si el buffer excede MAX_CSV_ROWS
    """
    if len(buffer) > MAX_CSV_ROWS:
        raise DomainError("Rango demasiado grande para CSV", filas=len(buffer))
    rows = (
        (buffer.n0 + i, float(v.real), float(v.imag)) for i, v in enumerate(buffer.values)
    )
    return write_csv(path, ["n", "re", "im"], rows, meta)


# ---------------------------------------------------------------------------
# Tablas genéricas
# ---------------------------------------------------------------------------

def write_csv(path, columns, rows, meta=None):
    """
    Escribe un CSV con cabecera de metadatos en líneas '# clave=valor'.

    Returns:
        int: cantidad de filas escritas
    """
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for key, value in sorted((meta or {}).items()):
            fh.write(f"# {key}={format_value(value)}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            if isinstance(row, dict):
                row = [row.get(col) for col in columns]
            writer.writerow([format_value(v) for v in row])
            count += 1
    return count


def read_csv(path):
    """Devuelve (meta, filas como diccionarios de cadenas)."""
    meta = {}
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    body = []
    for line in lines:
        if line.startswith("# ") and "=" in line and not body:
            key, value = line[2:].split("=", 1)
            meta[key] = value
        else:
            body.append(line)
    return meta, list(csv.DictReader(body))


def write_json(path, data, meta=None):
    payload = dict(data)
    if meta:
        payload["_meta"] = dict(meta)
    with open(path, "w", encoding="utf-8") as fh:
        text = json.dumps(
            payload, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default
        )
        fh.write(text)
        fh.write("\n")
    return Path(path)


# ---------------------------------------------------------------------------
# Formatos específicos
# ---------------------------------------------------------------------------

def write_spectral_model(model, path, meta=None):
    """
    JSON {kind, params, atoms: [{pos_turns, mass}]}; los átomos se
    materializan solo si no exceden MAX_MATERIALIZED_ATOMS.
    """
    include = model.is_atomic and (
        sum(f.count for f in model.families) <= MAX_MATERIALIZED_ATOMS
    )
    return write_json(path, model.to_dict(include_atoms=include), meta)


ENCLOSURE_COLUMNS = ["re", "im", "multiplicity", "enclosure_radius", "resolved"]


def write_enclosures(enclosures, path, meta=None):
    return write_csv(path, ENCLOSURE_COLUMNS, (e.to_dict() for e in enclosures), meta)


DISCREPANCY_COLUMNS = [
    "region",
    "count",
    "gamma",
    "discrepancy",
    "neighborhood",
    "bound",
    "ratio",
    "pass",
]


def write_discrepancy(report, path, meta=None):
    meta = dict(meta or {})
    meta.update(tau=report.tau, C=report.C, min_C=report.min_C)
    return write_csv(path, DISCREPANCY_COLUMNS, (row.to_dict() for row in report.rows), meta)
