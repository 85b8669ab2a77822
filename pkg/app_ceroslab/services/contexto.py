# app_ceroslab/services/contexto.py
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from scipy import optimize

from app_ceroslab.numerics.equidist import RadialGauge, recommended_gauge
from app_ceroslab.numerics.errors import CapacityError
from app_ceroslab.numerics.evaluator import DEFAULT_WINDOW_CONSTANT, SeriesSpec
from app_ceroslab.numerics.sequences import Multiplier, SequenceBuffer, generate
from app_ceroslab.numerics.serialization import file_sha256
from app_ceroslab.numerics.weights import SmoothWeight, WeightFamily

logger = logging.getLogger(__name__)

# índices extra sobre la ventana requerida
INDEX_MARGIN = 16


def build_weight(spec):
    if spec is None:
        return None
    family = WeightFamily.from_dict(
        {
            "kind": spec["kind"],
            "alpha": spec.get("alpha"),
            "beta": spec.get("beta"),
            "c": spec.get("c", 1.0),
            "grid_t": spec.get("grid_t"),
            "grid_phi": spec.get("grid_phi"),
        }
    )
    return SmoothWeight(family)


def build_multiplier(spec):
    if spec is None:
        return None
    data = {"kind": spec["kind"], "base": spec.get("base", "steinhaus")}
    if spec.get("alpha") is not None:
        data["alpha"] = spec["alpha"]
    return Multiplier.from_dict(data)


def build_gauge(spec, weight, multiplier=None):
    """Gauge explícito de la configuración o el recomendado para la familia."""
    if spec is None:
        return recommended_gauge(multiplier.kind, weight)
    kind = spec["kind"]
    if kind == "constant":
        return RadialGauge.constant(spec["rho0"])
    a = spec.get("a", 0.0) if kind == "diophantine" else None
    return RadialGauge(kind, weight, c=spec.get("c"), a=a)


def required_index(weight, R_max, window_constant=DEFAULT_WINDOW_CONSTANT):
    """max_index mínimo para evaluar F_ξ en |z| ≤ R_max, radios pequeños incluidos."""
    unit_spec = SeriesSpec(weight, SequenceBuffer.explicit([1.0]), window_constant)
    radii = [unit_spec.min_window_radius]
    if R_max > unit_spec.min_window_radius:
        radii.append(R_max)
    return max(unit_spec.required_max_index(r) for r in radii) + INDEX_MARGIN


@dataclass(frozen=True)
class Artefacto:
    nombre: str
    ruta: Path
    formato: str
    filas: int = None

    @property
    def sha256(self):
        return file_sha256(self.ruta)


@dataclass
class ResultadoExperimento:
    resumen: dict
    artefactos: list = field(default_factory=list)


@dataclass
class ContextoExperimento:
    """
    Todo lo que un experimento necesita: objetos numéricos construidos desde
    la configuración, constantes resueltas, directorio de salida y el pool.
    """

    config: dict
    seed: int
    constantes: object
    out_dir: Path
    meta: dict
    pool: object = None
    min_samples: int = 256
    _series: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.weight = build_weight(self.config.get("weight"))
        self.multiplier = build_multiplier(self.config.get("sequence"))
        self.window_constant = self.config.get("window_constant", DEFAULT_WINDOW_CONSTANT)
        self.max_index = self.config.get("max_index")

    # -- recursos numéricos --------------------------------------------------

    def map(self, func, items):
        """Reparte `items` en el pool; el orden del resultado es el de entrada."""
        items = list(items)
        if self.pool is None or len(items) < 2:
            return [func(item) for item in items]
        return self.pool.map(func, items)

    def sequence(self, n0, n1, seed=None):
        return generate(self.multiplier, n0, n1, self.seed if seed is None else seed)

    def series(self, R_max, seed=None):
        """
        SeriesSpec que cubre |z| ≤ R_max.

        Raises:
            CapacityError: si max_index de la configuración no alcanza
        """
        seed = self.seed if seed is None else seed
        needed = required_index(self.weight, R_max, self.window_constant)
        if self.max_index is not None:
            if self.max_index < needed:
                raise CapacityError(
                    "max_index no cubre el radio pedido",
                    required_max_index=needed,
                    max_index=self.max_index,
                    R=R_max,
                )
            needed = self.max_index
        key = (seed, needed)
        if key not in self._series:
            logger.debug("Generando F_ξ con %s coeficientes (semilla %s)", needed, seed)
            self._series[key] = SeriesSpec(
                self.weight, self.sequence(0, needed, seed), self.window_constant
            )
        return self._series[key]

    def gauge(self, entry):
        spec = entry.get("gauge") or self.config.get("gauge")
        return build_gauge(spec, self.weight, self.multiplier)

    def tau(self, entry):
        return entry.get("tau", self.config.get("tau", self.constantes["tau"]))

    def C(self, entry):
        if "C" in entry:
            return entry["C"]
        if "C" in self.config:
            return self.config["C"]
        family = self.multiplier.kind.value if self.multiplier else ""
        return self.constantes.para_familia("equidist_C", family)

    # -- salidas -------------------------------------------------------------

    def path(self, entry, suffix):
        name = entry.get("name") or entry["kind"]
        return self.out_dir / f"{name}{suffix}"

    def header(self, **extra):
        meta = dict(self.meta)
        meta.update(extra)
        return meta


def radius_for_sigma(weight, sigma):
    """R con σ(R) = sigma, por bisección en log R."""
    lo = 1e-9
    hi = 1.0
    while weight.dpsi(hi) < sigma:
        hi *= 2.0
    log_r = optimize.brentq(lambda s: weight.dpsi(s) - sigma, lo, hi, xtol=1e-12)
    return math.exp(log_r)
