# app_ceroslab/services/constants.py
"""
Resolución de constantes calibradas: valores incorporados < filas de
ConstanteCalibrada < archivo JSON de constantes.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from django.conf import settings
from django.db import DatabaseError

from app_ceroslab.numerics.errors import DomainError
from app_ceroslab.numerics.serialization import canonical_json, config_hash

logger = logging.getLogger(__name__)

# (clave, nombre, valor, familia, descripción)
DEFAULT_CONSTANTS = [
    ("tau", "τ de equidistribución", 2.0, "", "Radio de la vecindad del borde en d_ρ"),
    ("equidist_C", "C de equidistribución", 4.0, "", "Constante C de |n_F(K) - γ(K)| ≤ Cγ((∂K)_{+τ})"),
    ("tm_mahler_C", "C de Mahler", 8.0, "thue_morse", "|S(x,h) - σ(h)x| ≤ C·h·log(x+1)"),
    ("mirsky_C", "C de Mirsky", 5.0, "squarefree", "|S(x,h) - D(h)x| ≤ C·x^e"),
    ("mirsky_exponent", "Exponente de Mirsky", 0.68, "squarefree", "Exponente e de la cota de Mirsky"),
    ("grs_C", "C de Rudin–Shapiro", 10.0, "grs", "max |Σξ(s)ξ(s+h)| / (h(1+log M))"),
    ("sqfree_spectral_c", "c espectral de μ²", 0.05, "squarefree", "χ(I) ≥ c·|I|^{3/2} en intervalos diádicos"),
    ("tm_spectral_C", "C espectral de Thue–Morse", 4.0, "thue_morse", "χ_{2^n}(I') ≥ 2^{-m²-Cm}"),
    ("chowla_b", "Exponente de Chowla", 0.1, "rand_mult", "Cota ηx^{1+b} del momento"),
    ("laplace_K", "K de la reducción de Laplace", 5.0, "", "|F/μ - W| ≤ K·Δ(σ)(log σ)^{3/2}"),
    ("upper_K_prime", "K' de la cota superior", 5.0, "", "|F/μ| ≤ K'·√σ para |ξ| ≤ 1"),
    ("global_count_tol", "Tolerancia de conteo global", 0.1, "", "|n(R) - ν(R)| ≤ tol·ν(R)"),
    ("global_mean_tol", "Tolerancia de la media", 0.05, "", "Media sobre semillas"),
    ("sector_tol", "Tolerancia por sector", 0.15, "quadratic", "Conteo por sector frente a su masa γ"),
    ("weyl_witness_c", "c' del testigo de Weyl", 0.1, "quadratic", "|W| ≥ c'σ^{1/4}"),
    ("local_pass_fraction", "Fracción mínima de discos", 0.95, "", "Fracción de discos locales que deben pasar"),
    ("transport_tau_max", "τ máximo de transporte", 8.0, "", "Extremo superior de la bisección"),
]


@dataclass(frozen=True)
class ConstantesResueltas:
    valores: dict
    origenes: dict = field(default_factory=dict)

    @property
    def hash(self):
        return config_hash(self.valores)

    def __getitem__(self, clave):
        return self.valores[clave]

    def get(self, clave, default=None):
        return self.valores.get(clave, default)

    def para_familia(self, clave, familia):
        """Valor específico `clave_familia` si existe; si no, el genérico."""
        return self.valores.get(f"{clave}_{familia}", self.valores[clave])


def defaults():
    return {clave: valor for clave, _, valor, _, _ in DEFAULT_CONSTANTS}


def load_constants_file(path):
    """
    Lee un archivo de constantes: objeto JSON {clave: valor} o {"constants": {...}}.

    Raises:
        DomainError: si el archivo no existe o no es un objeto JSON
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DomainError("No existe el archivo de constantes", path=str(path))
    except ValueError as exc:
        raise DomainError("Archivo de constantes inválido", path=str(path), error=str(exc))
    data = data.get("constants", data) if isinstance(data, dict) else data
    if not isinstance(data, dict):
        raise DomainError("El archivo de constantes debe ser un objeto JSON", path=str(path))
    return {k: v for k, v in data.items() if not k.startswith("_")}


def _database_constants():
    from app_ceroslab.models import ConstanteCalibrada

    try:
        return {c.clave: c.valor_tipado for c in ConstanteCalibrada.objects.all()}
    except DatabaseError:
        logger.debug("Tabla de constantes no disponible; se omite la base de datos")
        return {}


def resolve_constants(path=None, use_database=True):
    """
    Resuelve las constantes congeladas.

    Args:
        path: archivo --constants; por defecto CEROSLAB["CONSTANTS_FILE"] si existe
        use_database (bool): consultar ConstanteCalibrada

    Returns:
        ConstantesResueltas
    """
    valores = defaults()
    origenes = {clave: "defecto" for clave in valores}
    if use_database:
        for clave, valor in _database_constants().items():
            if valor is not None:
                valores[clave] = valor
                origenes[clave] = "base_de_datos"
    if path is None:
        candidate = settings.CEROSLAB.get("CONSTANTS_FILE")
        path = candidate if candidate and Path(candidate).exists() else None
    if path is not None:
        for clave, valor in load_constants_file(path).items():
            valores[clave] = valor
            origenes[clave] = "archivo"
    return ConstantesResueltas(valores, origenes)


def export_constants(constantes):
    """Documento JSON del archivo de constantes."""
    return {"constants": dict(sorted(constantes.valores.items())), "_hash": constantes.hash}


def dump_constants(constantes):
    return canonical_json(export_constants(constantes))
