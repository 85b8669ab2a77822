# app_ceroslab/services/runner.py
"""
Ejecutor de configuraciones: valida el documento, construye el contexto
numérico, corre cada experimento en orden y registra el resultado.
"""
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from multiprocessing.pool import ThreadPool
from pathlib import Path

from django.conf import settings
from django.db import DatabaseError

from app_ceroslab import __version__
from app_ceroslab.numerics.errors import EXIT_OK, CapacityError, DomainError, LabError
from app_ceroslab.numerics.regions import Disk, region_from_dict
from app_ceroslab.numerics.serialization import config_hash, to_plain, write_json
from app_ceroslab.serializers.configuracion_serializers import ExperimentConfigSerializer

from .constants import resolve_constants
from .contexto import ContextoExperimento, build_weight, required_index
from .experiments import EXPERIMENTS

logger = logging.getLogger(__name__)

SUMMARY_FILE = "resumen.json"


def flatten_errors(errors, prefix=""):
    """
    Aplana los errores anidados de DRF en cadenas "campo: mensaje".

    Las listas de entradas se indexan como experiments[0].params.x.
    """
    out = []
    if isinstance(errors, dict):
        for key, value in errors.items():
            name = key if not prefix else f"{prefix}.{key}"
            if key == "non_field_errors":
                name = prefix or "config"
            out.extend(flatten_errors(value, name))
    elif isinstance(errors, list):
        if all(isinstance(item, str) for item in errors):
            out.extend(f"{prefix}: {item}" for item in errors)
        else:
            for i, item in enumerate(errors):
                if item:
                    out.extend(flatten_errors(item, f"{prefix}[{i}]"))
    else:
        out.append(f"{prefix}: {errors}")
    return out


def _series_radius(entry):
    """Radio máximo en que el experimento evalúa F_ξ, si se conoce sin calcular."""
    kind, params = entry["kind"], entry["params"]
    if kind in ("zero_count_sweep", "weyl_scan"):
        return max(params["radii"])
    if kind == "sector_equidist":
        return params["r2"]
    if kind == "local_disks":
        if params.get("disks"):
            regions = [region_from_dict(d) for d in params["disks"]]
            return max(abs(r.center) + (r.r if isinstance(r, Disk) else r.r2) for r in regions)
        if "hole_family" in params:
            hole = params["hole_family"]
            return hole["j_max"] ** 2 + hole["kappa"] * math.log(hole["j_max"]) ** 0.25
    return None


def capacity_errors(data):
    """max_index ≥ ventana requerida para cada experimento con radio conocido."""
    max_index = data.get("max_index")
    if max_index is None or "weight" not in data:
        return []
    try:
        weight = build_weight(data["weight"])
    except DomainError as exc:
        return [f"weight: {exc.message}"]
    window = data.get("window_constant", settings.CEROSLAB["WINDOW_CONSTANT"])
    errors = []
    for i, entry in enumerate(data.get("experiments", [])):
        R = _series_radius(entry)
        if R is None:
            continue
        try:
            needed = required_index(weight, R, window)
        except LabError as exc:
            errors.append(f"experiments[{i}]: {exc.message}")
            continue
        if needed > max_index:
            errors.append(
                f"experiments[{i}]: max_index={max_index} no cubre R={R:g}; "
                f"se requiere max_index ≥ {needed}"
            )
    return errors


def validate(config):
    """
    Validación estática completa, sin cálculo.

    Returns:
        list: mensajes "campo: error"; vacía si la configuración es válida
    """
    serializer = ExperimentConfigSerializer(data=config)
    if not serializer.is_valid():
        return flatten_errors(serializer.errors)
    return capacity_errors(serializer.validated_data)


def load_config(config):
    """
    Valida y devuelve la configuración como datos nativos.

    Raises:
        DomainError: con la lista de errores en `detail["errores"]`
        CapacityError: si max_index no cubre algún experimento
    """
    serializer = ExperimentConfigSerializer(data=config)
    if not serializer.is_valid():
        errores = flatten_errors(serializer.errors)
        raise DomainError("Configuración inválida: " + "; ".join(errores), errores=errores)
    data = to_plain(serializer.validated_data)
    capacity = capacity_errors(data)
    if capacity:
        raise CapacityError("; ".join(capacity), errores=capacity)
    return data


@dataclass
class Ejecucion:
    """Resultado de run(): resumen por experimento y los artefactos escritos."""

    resumen: dict
    artefactos: list = field(default_factory=list)
    experimento: object = None
    exit_code: int = EXIT_OK


def _persist_start(data, digest, seed, constantes, out_dir, experimento=None):
    from app_ceroslab.models import Experimento

    kinds = {entry["kind"] for entry in data["experiments"]}
    campos = {
        "tipo": kinds.pop() if len(kinds) == 1 else "lote",
        "configuracion": data,
        "hash_configuracion": digest,
        "semilla": Decimal(seed),
        "version_software": __version__,
        "hash_constantes": constantes.hash,
        "directorio_salida": str(out_dir),
        "mensaje_error": None,
        "codigo_salida": None,
    }
    try:
        if experimento is None:
            nombre = data.get("name") or f"config-{digest[:12]}"
            experimento = Experimento.objects.create(nombre=nombre, **campos)
        else:
            for campo, valor in campos.items():
                setattr(experimento, campo, valor)
            experimento.save()
            experimento.artefactos.all().delete()
    except DatabaseError:
        logger.warning("No se pudo registrar el experimento en la base de datos")
        return None
    experimento.marcar_ejecutando()
    return experimento


def _persist_artefactos(experimento, artefactos):
    from app_ceroslab.models import ArtefactoExperimento

    ArtefactoExperimento.objects.bulk_create(
        [
            ArtefactoExperimento(
                experimento=experimento,
                nombre=a.nombre,
                ruta=str(a.ruta),
                formato=a.formato,
                sha256=a.sha256,
                filas=a.filas,
            )
            for a in artefactos
        ]
    )


def run(
    config,
    out_dir=None,
    seed=None,
    threads=None,
    constants_path=None,
    persist=True,
    experimento=None,
):
    """
    Corre todos los experimentos de la configuración.

    Args:
        config (dict): documento de configuración sin validar
        out_dir: directorio de salida; por defecto CEROSLAB["OUTPUT_DIR"]/<hash>
        seed: semilla que reemplaza a la de la configuración
        threads (int): hilos del pool; 1 ejecuta en serie
        constants_path: archivo --constants
        persist (bool): registrar Experimento y artefactos en la base de datos
        experimento: registro existente que se reutiliza en lugar de crear uno

    Returns:
        Ejecucion

    Raises:
        LabError: el primer error de un experimento; el registro queda fallido
    """
    data = load_config(config)
    digest = config_hash(data)
    seed = data["seed"] if seed is None else int(seed)
    if not data["experiments"]:
        logger.info("Configuración sin experimentos; no hay nada que ejecutar")
        return Ejecucion({"experiments": []})

    lab = settings.CEROSLAB
    threads = threads or lab["THREADS"]
    out_dir = Path(out_dir or Path(lab["OUTPUT_DIR"]) / digest[:12])
    out_dir.mkdir(parents=True, exist_ok=True)
    constantes = resolve_constants(constants_path)
    meta = {
        "config_hash": digest,
        "software_version": __version__,
        "constants_hash": constantes.hash,
        "seed": seed,
    }
    if persist:
        experimento = _persist_start(data, digest, seed, constantes, out_dir, experimento)
    else:
        experimento = None

    resumen, artefactos = [], []
    pool = ThreadPool(threads) if threads > 1 else None
    try:
        ctx = ContextoExperimento(
            config={"window_constant": lab["WINDOW_CONSTANT"], **data},
            seed=seed,
            constantes=constantes,
            out_dir=out_dir,
            meta=meta,
            pool=pool,
            min_samples=lab["MIN_CONTOUR_SAMPLES"],
        )
        for entry in data["experiments"]:
            name = entry.get("name") or entry["kind"]
            logger.info("Experimento %s (%s)", name, entry["kind"])
            resultado = EXPERIMENTS[entry["kind"]](ctx, entry)
            if resultado.resumen.get("all_pass") is False:
                logger.warning("El experimento %s tiene filas que no pasan", name)
            resumen.append(
                {
                    "name": name,
                    "kind": entry["kind"],
                    "summary": resultado.resumen,
                    "files": [a.nombre for a in resultado.artefactos],
                }
            )
            artefactos.extend(resultado.artefactos)
    except LabError as exc:
        logger.error("Falla en la ejecución: %s", exc.message)
        if experimento is not None:
            experimento.marcar_fallido(exc.message, exc.exit_code)
        raise
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    document = to_plain({"experiments": resumen})
    write_json(out_dir / SUMMARY_FILE, document, meta)
    if experimento is not None:
        _persist_artefactos(experimento, artefactos)
        experimento.marcar_completado(document)
    return Ejecucion(document, artefactos, experimento)
