# app_ceroslab/numerics/zeros.py
"""
Conteo y localización de ceros por el principio del argumento.

El evaluador es cualquier objeto con `evaluate(z)`, `evaluate_circle(r, M)`
y `oscillation_index(r)` (SeriesSpec o PolynomialSeries): sus valores son
F multiplicada por un factor real positivo, así que el argumento es el de F.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import e_turns
from .errors import DomainError, NumericError, OnContourZeroError, PreconditionError
from .regions import AnnulusSector, Disk

logger = logging.getLogger(__name__)

DEFAULT_MIN_SAMPLES = 256
PHASE_STEP_LIMIT = 0.25  # vueltas
ZERO_TOLERANCE = 1e-12
PERTURBATION_FACTOR = 1e-6
MAX_PERTURBATIONS = 8
MAX_REFINEMENT_DEPTH = 24
MAX_LOCALIZED_COUNT = 10_000


class _NearContourZero(Exception):
    def __init__(self, min_modulus, scale):
        super().__init__(min_modulus, scale)
        self.min_modulus = min_modulus
        self.scale = scale


@dataclass(frozen=True)
class PathTrace:
    turns: float
    min_modulus: float
    depth: int
    samples: int


@dataclass(frozen=True)
class ZeroCountReport:
    region: object
    count: int
    gamma_mass: float
    min_boundary_modulus: float
    refinement_depth: int
    samples: int = 0
    perturbations: int = 0

    def to_dict(self):
        return {
            "region": self.region.to_dict(),
            "count": self.count,
            "gamma_mass": self.gamma_mass,
            "min_boundary_modulus": self.min_boundary_modulus,
            "refinement_depth": self.refinement_depth,
            "samples": self.samples,
            "perturbations": self.perturbations,
        }


@dataclass(frozen=True)
class Enclosure:
    """Disco D(center, radius) que contiene `multiplicity` ceros."""

    center: complex
    radius: float
    multiplicity: int
    resolved: bool = True

    def to_dict(self):
        return {
            "re": self.center.real,
            "im": self.center.imag,
            "multiplicity": self.multiplicity,
            "enclosure_radius": self.radius,
            "resolved": self.resolved,
        }


# ---------------------------------------------------------------------------
# Trazado de caminos con desenvolvimiento de fase
# ---------------------------------------------------------------------------

def _trace(evaluator, path, n, t=None, values=None):
    """
    Variación del argumento (en vueltas) a lo largo de path(t), t ∈ [0, 1].

    Los saltos de fase entre muestras consecutivas se mantienen por debajo
    de ¼ de vuelta insertando puntos medios solo donde hace falta.
    """
    if t is None:
        t = np.linspace(0.0, 1.0, n + 1)
        values = evaluator.evaluate(path(t))
    depth = 0
    while True:
        modulus = np.abs(values)
        scale = float(np.median(modulus))
        low = float(modulus.min())
        if scale == 0 or low <= ZERO_TOLERANCE * scale:
            raise _NearContourZero(low, scale)
        steps = np.angle(values[1:] / values[:-1]) / (2 * np.pi)
        bad = np.abs(steps) >= PHASE_STEP_LIMIT
        if not bad.any():
            break
        if depth == MAX_REFINEMENT_DEPTH:
            raise NumericError(
                "El refinamiento de fase no convergió",
                saltos=int(bad.sum()),
                muestras=int(t.size),
            )
        t_mid = 0.5 * (t[:-1] + t[1:])[bad]
        v_mid = evaluator.evaluate(path(t_mid))
        t = np.concatenate([t, t_mid])
        values = np.concatenate([values, v_mid])
        order = np.argsort(t, kind="stable")
        t, values = t[order], values[order]
        depth += 1
    if depth:
        logger.debug("Refinamiento local de fase: profundidad %s, %s muestras", depth, t.size)
    return PathTrace(float(np.sum(steps)), low, depth, int(t.size))


def _arc_samples(evaluator, radius, span, min_samples):
    n = max(min_samples, 8 * evaluator.oscillation_index(radius))
    return max(16, math.ceil(n * span))


def _power_of_two(n):
    return 1 << max(0, math.ceil(math.log2(n)))


def _circle_traces(evaluator, disk, min_samples):
    c, r = disk.center, disk.r
    path = lambda t: c + r * e_turns(t)  # noqa: E731
    if disk.is_centered:
        M = _power_of_two(_arc_samples(evaluator, r, 1.0, min_samples))
        values = evaluator.evaluate_circle(r, M)
        t = np.arange(M + 1) / M
        values = np.append(values, values[0])
        return [_trace(evaluator, path, M, t, values)]
    n = _arc_samples(evaluator, abs(c) + r, 1.0, min_samples)
    return [_trace(evaluator, path, n)]


def _sector_traces(evaluator, sector, min_samples):
    c, r1, r2 = sector.center, sector.r1, sector.r2
    th1, th2, span = sector.theta1, sector.theta2, sector.span
    reach = abs(c)
    radial = max(
        64,
        min_samples // 4,
        2 * (evaluator.oscillation_index(reach + r2) - evaluator.oscillation_index(max(reach - r2, 0.0))),
    )
    pieces = [
        (lambda t: c + r2 * e_turns(th1 + t * span), _arc_samples(evaluator, reach + r2, span, min_samples)),
        (lambda t: c + (r2 + t * (r1 - r2)) * e_turns(th2), radial),
    ]
    if r1 > 0:
        pieces.append(
            (lambda t: c + r1 * e_turns(th2 - t * span), _arc_samples(evaluator, reach + r1, span, min_samples))
        )
    pieces.append((lambda t: c + (r1 + t * (r2 - r1)) * e_turns(th1), radial))
    return [_trace(evaluator, path, n) for path, n in pieces]


def _closed_count(traces):
    turns = math.fsum(tr.turns for tr in traces)
    count = round(turns)
    if abs(turns - count) > 1e-6:
        raise NumericError("La variación del argumento no es entera", vueltas=turns)
    return count, min(tr.min_modulus for tr in traces), max(tr.depth for tr in traces), sum(
        tr.samples for tr in traces
    )


def _perturbed(region, attempt):
    """Contorno dilatado por (1 + 10⁻⁶)^attempt; los ángulos no cambian."""
    factor = (1.0 + PERTURBATION_FACTOR) ** attempt
    if isinstance(region, Disk):
        return Disk(region.r * factor, region.center)
    return AnnulusSector(
        region.r1 * factor,
        region.r2 * factor,
        region.theta1,
        region.theta2,
        region.center,
    )


def _gamma_of(evaluator, region):
    weight = getattr(evaluator, "weight", None)
    if weight is None:
        return None
    if isinstance(region, AnnulusSector) and not region.is_centered:
        return None
    return weight.gamma_mass(region)


def _count_once(evaluator, region, min_samples):
    if isinstance(region, Disk):
        traces = _circle_traces(evaluator, region, min_samples)
    elif isinstance(region, AnnulusSector):
        traces = _sector_traces(evaluator, region, min_samples)
    else:
        raise DomainError("Contorno no admitido", region=repr(region))
    return _closed_count(traces)


def _count_with_perturbation(evaluator, region, min_samples, allow_perturbation=True):
    attempts = MAX_PERTURBATIONS if allow_perturbation else 0
    last = None
    for attempt in range(attempts + 1):
        candidate = region if attempt == 0 else _perturbed(region, attempt)
        try:
            count, low, depth, samples = _count_once(evaluator, candidate, min_samples)
        except _NearContourZero as exc:
            last = exc
            logger.debug("Cero cerca del contorno %s; perturbación %s", candidate.label(), attempt + 1)
            continue
        return ZeroCountReport(
            region=candidate,
            count=count,
            gamma_mass=_gamma_of(evaluator, candidate),
            min_boundary_modulus=low,
            refinement_depth=depth,
            samples=samples,
            perturbations=attempt,
        )
    raise OnContourZeroError(
        "Un cero permanece sobre el contorno",
        region=region.label(),
        min_modulus=last.min_modulus,
        scale=last.scale,
        intentos=attempts + 1,
    )


# ---------------------------------------------------------------------------
# Operaciones públicas
# ---------------------------------------------------------------------------

def winding_count(evaluator, contour, min_samples=DEFAULT_MIN_SAMPLES):
    """
    Número de vueltas de F a lo largo del borde de `contour`.

    Args:
        evaluator: SeriesSpec o PolynomialSeries
        contour: Disk (circunferencia) o AnnulusSector
        min_samples (int): muestras mínimas por circunferencia completa

    Returns:
        ZeroCountReport: conteo entero exacto y diagnósticos

    Raises:
        OnContourZeroError: si tras 8 perturbaciones radiales sigue habiendo
            un cero sobre el contorno
    """
    return _count_with_perturbation(evaluator, contour, min_samples)


def count_region(evaluator, region, min_samples=DEFAULT_MIN_SAMPLES):
    """
    Ceros de F en un disco o sector anular, con la masa γ adjunta.

    Un sector degenerado (θ1 = θ2) devuelve 0 sin evaluar; un anillo completo
    se cuenta como diferencia de sus dos circunferencias.
    """
    if region.is_degenerate:
        return ZeroCountReport(region, 0, _gamma_of(evaluator, region), math.inf, 0)
    if isinstance(region, AnnulusSector) and region.is_full:
        outer = _count_with_perturbation(evaluator, Disk(region.r2, region.center), min_samples)
        if region.r1 == 0:
            inner_count, inner_low, inner_depth, inner_samples, r1 = 0, math.inf, 0, 0, 0.0
        else:
            inner = _count_with_perturbation(evaluator, Disk(region.r1, region.center), min_samples)
            inner_count, inner_low = inner.count, inner.min_boundary_modulus
            inner_depth, inner_samples, r1 = inner.refinement_depth, inner.samples, inner.region.r
        used = AnnulusSector(r1, outer.region.r, region.theta1, region.theta2, region.center)
        return ZeroCountReport(
            region=used,
            count=outer.count - inner_count,
            gamma_mass=_gamma_of(evaluator, used),
            min_boundary_modulus=min(outer.min_boundary_modulus, inner_low),
            refinement_depth=max(outer.refinement_depth, inner_depth),
            samples=outer.samples + inner_samples,
            perturbations=outer.perturbations,
        )
    return _count_with_perturbation(evaluator, region, min_samples)


def _split(cell, attempt):
    """Subdivisión polar; `attempt` desplaza los cortes si un hijo toca un cero."""
    wobble = 0.013 * attempt * (-1) ** attempt
    if isinstance(cell, Disk):
        rho = cell.r * (0.5 + wobble)
        offset = 0.1234567 + 0.0711 * attempt
        ring = [
            AnnulusSector(rho, cell.r, offset + j / 4, offset + (j + 1) / 4, cell.center)
            for j in range(4)
        ]
        return [Disk(rho, cell.center)] + ring
    r_mid = 0.5 * (cell.r1 + cell.r2)
    arc = 2 * math.pi * r_mid * cell.span
    aspect = (cell.r2 - cell.r1) / arc if arc > 0 else math.inf
    radii = [cell.r1, cell.r2]
    angles = [cell.theta1, cell.theta2]
    if aspect > 0.5:
        radii = [cell.r1, cell.r1 + (cell.r2 - cell.r1) * (0.5 + wobble), cell.r2]
    if aspect < 2:
        angles = [cell.theta1, cell.theta1 + cell.span * (0.5 + wobble), cell.theta2]
    return [
        AnnulusSector(radii[i], radii[i + 1], angles[j], angles[j + 1], cell.center)
        for i in range(len(radii) - 1)
        for j in range(len(angles) - 1)
    ]


def _covering(cell):
    if isinstance(cell, Disk):
        return cell.center, cell.r
    return cell.midpoint, cell.covering_radius()


def localize_zeros(
    evaluator,
    region,
    target_cell_diameter,
    min_samples=DEFAULT_MIN_SAMPLES,
    max_depth=60,
    executor=None,
):
    """
    Subdivisión recursiva de la región conservando las celdas con ceros.

    Las multiplicidades de los encierros devueltos suman exactamente el
    conteo de la región: si los cortes de una celda tocan un cero se
    desplazan, y si nunca se logra una partición consistente la celda se
    devuelve marcada como no resuelta.

    Returns:
        list: Enclosure ordenados por (parte real, parte imaginaria)

    Raises:
        PreconditionError: si la región tiene más de 10⁴ ceros
    """
    if not target_cell_diameter > 0:
        raise DomainError("El diámetro objetivo debe ser positivo", target=target_cell_diameter)
    root = count_region(evaluator, region, min_samples)
    if root.count > MAX_LOCALIZED_COUNT:
        raise PreconditionError("Demasiados ceros para localizar", count=root.count)
    if root.count < 0:
        raise NumericError("Conteo negativo en la región", count=root.count)
    mapper = executor.map if executor is not None else map
    enclosures = []
    pending = [(root.region, root.count, 0)] if root.count else []

    def strict_count(cell):
        try:
            return _count_with_perturbation(evaluator, cell, min_samples, allow_perturbation=False).count
        except OnContourZeroError:
            return None

    while pending:
        cell, count, depth = pending.pop()
        if cell.diameter <= target_cell_diameter or depth >= max_depth:
            center, radius = _covering(cell)
            enclosures.append(Enclosure(center, radius, count, cell.diameter <= target_cell_diameter))
            continue
        for attempt in range(MAX_PERTURBATIONS + 1):
            children = _split(cell, attempt)
            counts = list(mapper(strict_count, children))
            if None not in counts and sum(counts) == count and min(counts) >= 0:
                break
            logger.debug("Partición inconsistente de %s; intento %s", cell.label(), attempt + 1)
        else:
            logger.warning("Celda no resuelta: %s (%s ceros)", cell.label(), count)
            center, radius = _covering(cell)
            enclosures.append(Enclosure(center, radius, count, resolved=False))
            continue
        pending.extend(
            (child, n, depth + 1) for child, n in zip(children, counts) if n > 0
        )
    enclosures.sort(key=lambda e: (e.center.real, e.center.imag))
    return enclosures
