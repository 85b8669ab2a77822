# app_ceroslab/numerics/equidist.py
"""
Gauge radial ρ, métrica d_ρ, masas de vecindades del borde, informes de
discrepancia (γ, ρ), la cota de Gauss para puntos del retículo y la
verificación de transporte sobre familias finitas de regiones.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np
from scipy import integrate, optimize

from .errors import CoverageError, DomainError, GaugeUndefinedError, LabError
from .regions import AnnulusSector, Disk, Rectangle, region_sort_key

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
DEFAULT_TAU = 2.0
RADIAL_EDGE_PIECES = 64
PROXY_TOLERANCE = 2.0
GEODESIC_TOL = 1e-11
# malla donde se busca el piso a partir del cual R/ρ(R) crece
FLOOR_SCAN = (1.0 + 1e-6, 1e4, 2000)


class GaugeKind(str, Enum):
    SQRT_LOG = "sqrt_log"
    POWER = "power"
    DIOPHANTINE = "diophantine"
    EXP_SQRT = "exp_sqrt"
    CONSTANT = "constant"


@dataclass(frozen=True)
class RadialGauge:
    """
    Escala local ρ(R).

    - sqrt_log: R√(log σ/σ)
    - power(c): Rσ^{-c}, c ∈ (0, ½)
    - diophantine(a): Rσ^{-1/2}(log σ)^{(a+1)/2}, a ≥ 0
    - exp_sqrt(c): R e^{-c√(log σ)}, c > 0
    - constant(ρ0)
    """

    kind: GaugeKind
    weight: object = None
    c: float = None
    a: float = None
    rho0: float = None

    def __post_init__(self):
        kind = GaugeKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is GaugeKind.CONSTANT:
            if self.rho0 is None or not self.rho0 > 0:
                raise DomainError("El gauge constante requiere ρ0 > 0", rho0=self.rho0)
            return
        if self.weight is None:
            raise DomainError("El gauge requiere un peso", kind=kind.value)
        if kind is GaugeKind.POWER and (self.c is None or not 0 < self.c < 0.5):
            raise DomainError("c debe estar en (0, 1/2)", c=self.c)
        if kind is GaugeKind.DIOPHANTINE and (self.a is None or self.a < 0):
            raise DomainError("a debe ser ≥ 0", a=self.a)
        if kind is GaugeKind.EXP_SQRT and (self.c is None or not self.c > 0):
            raise DomainError("c debe ser positivo", c=self.c)

    @classmethod
    def sqrt_log(cls, weight):
        return cls(GaugeKind.SQRT_LOG, weight)

    @classmethod
    def power(cls, weight, c):
        return cls(GaugeKind.POWER, weight, c=float(c))

    @classmethod
    def diophantine(cls, weight, a=0.0):
        return cls(GaugeKind.DIOPHANTINE, weight, a=float(a))

    @classmethod
    def exp_sqrt(cls, weight, c):
        return cls(GaugeKind.EXP_SQRT, weight, c=float(c))

    @classmethod
    def constant(cls, rho0):
        return cls(GaugeKind.CONSTANT, rho0=float(rho0))

    def rho(self, R):
        """ρ(R), escalar o arreglo."""
        scalar = np.ndim(R) == 0
        R = np.asarray(R, dtype=float)
        if self.kind is GaugeKind.CONSTANT:
            out = np.full(R.shape, self.rho0)
            return float(out) if scalar else out
        if np.any(R <= 1):
            raise GaugeUndefinedError("El gauge requiere R > 1", R=float(np.min(R)))
        sigma = np.asarray(self.weight.dpsi(np.log(R)), dtype=float)
        if np.any(sigma <= 1):
            raise GaugeUndefinedError("El gauge requiere σ > 1", sigma=float(np.min(sigma)))
        log_s = np.log(sigma)
        if self.kind is GaugeKind.SQRT_LOG:
            out = R * np.sqrt(log_s / sigma)
        elif self.kind is GaugeKind.POWER:
            out = R * sigma ** (-self.c)
        elif self.kind is GaugeKind.DIOPHANTINE:
            out = R / np.sqrt(sigma) * log_s ** ((self.a + 1) / 2)
        else:
            out = R * np.exp(-self.c * np.sqrt(log_s))
        return float(out) if scalar else out

    def angular_scale(self, R):
        """R/ρ(R): longitud d_ρ de un arco de radio R por radián."""
        return R / self.rho(R)

    @cached_property
    def geodesic_floor(self):
        """
        Menor radio de la malla de control desde el cual R/ρ(R) es creciente
        y está definido; fuera de ese disco d_ρ se resuelve por geodésicas.
        """
        grid = np.geomspace(*FLOOR_SCAN)
        scale = np.full(grid.size, np.nan)
        for i, R in enumerate(grid):
            try:
                scale[i] = self.angular_scale(float(R))
            except LabError:
                continue
        ok = np.isfinite(scale[:-1]) & np.isfinite(scale[1:]) & (np.diff(scale) > 0)
        bad = np.flatnonzero(~ok)
        return float(grid[bad[-1] + 1]) if bad.size else float(grid[0])

    def rho_prime(self, R, rel_step=1e-5):
        """Derivada de ρ por diferencia central."""
        h = R * rel_step
        return (self.rho(R + h) - self.rho(R - h)) / (2 * h)

    def slow_variation_threshold(self, R_max, bound=0.1, points=400):
        """
        Menor R de una malla logarítmica en (1, R_max] a partir del cual
        |ρ'(R)| ≤ bound en todo el resto de la malla (None si no existe).
        """
        if self.kind is GaugeKind.CONSTANT:
            return 1.0
        grid = np.geomspace(1.0 + 1e-3, R_max, points)
        ok = np.zeros(grid.size, dtype=bool)
        for i, R in enumerate(grid):
            try:
                ok[i] = abs(self.rho_prime(R)) <= bound
            except GaugeUndefinedError:
                ok[i] = False
        if not ok[-1]:
            return None
        bad = np.flatnonzero(~ok)
        return float(grid[bad[-1] + 1]) if bad.size else float(grid[0])

    def to_dict(self):
        data = {"kind": self.kind.value}
        for key in ("c", "a", "rho0"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data


# umbral superior de exponentes por familia y exponente recomendado
FAMILY_GAUGES = {
    "iid_gaussian": ("sqrt_log", None, None),
    "iid_rademacher": ("sqrt_log", None, None),
    "iid_steinhaus": ("sqrt_log", None, None),
    "rand_mult": ("power", 0.15, 1.0 / 6.0),
    "rand_compl_mult": ("power", 0.15, 1.0 / 6.0),
    "grs": ("power", 0.3, 1.0 / 3.0),
    "squarefree": ("power", 0.09, 2.0 / 21.0),
    "thue_morse": ("exp_sqrt", 0.5, None),
}


def recommended_gauge(family, weight, c=None, a=0.0, b=None):
    """
    Gauge de los teoremas de equidistribución para cada familia ξ.

    Para la fase cuadrática: con cocientes parciales acotados (b = None) se
    usa diophantine(a); con exponente de irracionalidad b > 0, power(1/(2+b)).

    Raises:
        DomainError: familia sin gauge o exponente fuera del rango admitido
    """
    family = getattr(family, "value", family)
    if family == "quadratic":
        if b is None:
            return RadialGauge.diophantine(weight, a)
        if not b > 0:
            raise DomainError("b debe ser positivo", b=b)
        return RadialGauge.power(weight, 1.0 / (2.0 + b))
    if family not in FAMILY_GAUGES:
        raise DomainError("La familia no tiene gauge de equidistribución", family=family)
    kind, default_c, limit = FAMILY_GAUGES[family]
    if kind == "sqrt_log":
        return RadialGauge.sqrt_log(weight)
    c = default_c if c is None else float(c)
    if limit is not None and not 0 < c < limit:
        raise DomainError(
            "Exponente fuera del rango de la familia", family=family, c=c, limite=limit
        )
    if kind == "power":
        return RadialGauge.power(weight, c)
    return RadialGauge.exp_sqrt(weight, c)


# ---------------------------------------------------------------------------
# Métrica d_ρ
# ---------------------------------------------------------------------------

def _path_length(gauge, points, tol=1e-10):
    total = 0.0
    for z1, z2 in zip(points[:-1], points[1:]):
        length = abs(z2 - z1)
        if length == 0:
            continue
        value, _ = integrate.quad(
            lambda t: length / gauge.rho(abs(z1 + t * (z2 - z1))), 0.0, 1.0, epsabs=tol, limit=200
        )
        total += value
    return total


def _radial_integrals(gauge, a, b, k, tol=GEODESIC_TOL):
    """
    Ángulo barrido y longitud d_ρ de la geodésica con constante de Clairaut k
    entre los radios a ≤ b, con f(a) ≥ k. El cambio r = a + t² quita la
    singularidad de raíz cuadrada en el punto de giro.
    """
    if b <= a:
        return 0.0, 0.0

    def integrand(t):
        r = a + t * t
        rho = gauge.rho(r)
        f = r / rho
        root = math.sqrt(max(f * f - k * k, 0.0))
        if root == 0.0:
            return np.zeros(2)
        return np.array([2 * t * k / (r * root), 2 * t * f / (rho * root)])

    value, _ = integrate.quad_vec(
        integrand, 0.0, math.sqrt(b - a), epsabs=tol, epsrel=tol, limit=400
    )
    return float(value[0]), float(value[1])


def _angle_between(z1, z2):
    dtheta = abs(cmath.phase(z2) - cmath.phase(z1))
    return min(dtheta, 2 * math.pi - dtheta)


def _geodesic_length(gauge, z1, z2):
    """
    Longitud de la geodésica de |dw|/ρ(|w|) fuera del disco de radio
    `gauge.geodesic_floor`.

    Con f(R) = R/ρ(R) creciente, la geodésica cumple f(r)·sen ψ = k (ψ ángulo
    con la dirección radial). Es monótona en r para k ≤ f(r1), gira en
    r* con f(r*) = k si el ángulo no alcanza, y rodea el círculo del piso
    cuando ni siquiera el giro en el piso cubre el ángulo.
    """
    r1, r2 = sorted((abs(z1), abs(z2)))
    dtheta = _angle_between(z1, z2)
    floor = gauge.geodesic_floor
    f = gauge.angular_scale
    if dtheta == 0.0:
        return _radial_integrals(gauge, r1, r2, 0.0)[1]

    k_top = f(r1)
    theta_top, _ = _radial_integrals(gauge, r1, r2, k_top)
    if dtheta <= theta_top:
        k = optimize.brentq(
            lambda k: _radial_integrals(gauge, r1, r2, k)[0] - dtheta, 0.0, k_top, xtol=1e-13
        )
        return _radial_integrals(gauge, r1, r2, k)[1]

    def turning(r_star):
        k = f(r_star)
        a1, l1 = _radial_integrals(gauge, r_star, r1, k)
        a2, l2 = _radial_integrals(gauge, r_star, r2, k)
        return a1 + a2, l1 + l2

    theta_floor, length_floor = turning(floor)
    if dtheta >= theta_floor:
        return length_floor + f(floor) * (dtheta - theta_floor)
    r_star = optimize.brentq(lambda r: turning(r)[0] - dtheta, floor, r1, xtol=1e-13)
    return turning(r_star)[1]


def _arc_path_length(gauge, z1, z2):
    """Tramo radial hasta el menor de los dos radios y arco a ese radio."""
    r, R = sorted((abs(z1), abs(z2)))
    if not r > 1:
        raise GaugeUndefinedError("El camino sale del dominio del gauge", R=r)
    return _radial_integrals(gauge, r, R, 0.0)[1] + gauge.angular_scale(r) * _angle_between(z1, z2)


def _explicit_path_bound(gauge, z1, z2, detours):
    """Mínimo sobre el segmento, los desvíos por el punto medio y el arco."""
    candidates = []
    paths = [[z1, z2]]
    mid = 0.5 * (z1 + z2)
    if mid != 0:
        step = abs(z2 - z1) / abs(mid)
        paths.extend([z1, mid * (1.0 + delta * step), z2] for delta in detours)
    for points in paths:
        try:
            candidates.append(_path_length(gauge, points))
        except GaugeUndefinedError:
            continue
    try:
        candidates.append(_arc_path_length(gauge, z1, z2))
    except GaugeUndefinedError:
        pass
    if not candidates:
        raise GaugeUndefinedError("Ningún camino evita el disco unidad", z1=z1, z2=z2)
    return min(candidates)


def d_rho(gauge, z1, z2, detours=(-0.25, -0.1, 0.1, 0.25)):
    """
    d_ρ(z1, z2) = inf ∫ |dw|/ρ(|w|) sobre curvas que unen z1 y z2.

    Si ambos puntos están fuera de `gauge.geodesic_floor` se resuelve la
    geodésica por la relación de Clairaut (exacta salvo la tolerancia de
    cuadratura). Si no, se devuelve la cota superior del mejor camino explícito:
    segmento, desvíos radiales por el punto medio o arco al menor radio.
    """
    z1, z2 = complex(z1), complex(z2)
    if z1 == z2:
        return 0.0
    if gauge.kind is GaugeKind.CONSTANT:
        return abs(z1 - z2) / gauge.rho0
    # orden canónico para que d(z1, z2) y d(z2, z1) coincidan bit a bit
    if (z2.real, z2.imag) < (z1.real, z1.imag):
        z1, z2 = z2, z1
    if min(abs(z1), abs(z2)) >= gauge.geodesic_floor:
        try:
            return _geodesic_length(gauge, z1, z2)
        except ValueError as exc:
            logger.debug("Geodésica no resuelta entre %s y %s: %s", z1, z2, exc)
    return _explicit_path_bound(gauge, z1, z2, detours)


# ---------------------------------------------------------------------------
# Vecindades del borde
# ---------------------------------------------------------------------------

def _union_mass(weight, rects):
    """
    Masa γ de una unión de rectángulos (s0, s1, θ0, θ1) en coordenadas polares,
    con densidad dν(s) ⊗ dθ; se comprimen coordenadas y se suman celdas cubiertas.
    """
    if not rects:
        return 0.0
    rects = np.asarray(rects, dtype=float)
    s_edges = np.unique(rects[:, :2])
    t_edges = np.unique(rects[:, 2:])
    covered = np.zeros((s_edges.size - 1, t_edges.size - 1), dtype=bool)
    for s0, s1, t0, t1 in rects:
        i0, i1 = np.searchsorted(s_edges, [s0, s1])
        j0, j1 = np.searchsorted(t_edges, [t0, t1])
        covered[i0:i1, j0:j1] = True
    nu = np.asarray(weight.nu(s_edges), dtype=float)
    ds = np.diff(nu)
    dt = np.diff(t_edges)
    return math.fsum((covered * ds[:, None] * dt[None, :]).ravel())


def _sector_rects(gauge, sector, tau):
    r1, r2, th1, th2 = sector.r1, sector.r2, sector.theta1, sector.theta2
    d2 = 2 * tau * gauge.rho(r2)
    a2 = d2 / (2 * math.pi * r2)
    rects = [(max(r2 - d2, 0.0), r2 + d2, th1 - a2, th2 + a2)]
    s_lo = 0.0
    if r1 > 0:
        if r1 <= 1:
            raise DomainError("El borde interior debe estar fuera del disco unidad", r1=r1)
        d1 = 2 * tau * gauge.rho(r1)
        a1 = d1 / (2 * math.pi * r1)
        rects.append((max(r1 - d1, 0.0), r1 + d1, th1 - a1, th2 + a1))
        s_lo = max(r1 - d1, 0.0)
    if not sector.is_full:
        edges = np.linspace(s_lo, r2 + d2, RADIAL_EDGE_PIECES + 1)
        for s0, s1 in zip(edges[:-1], edges[1:]):
            # semiancho angular 2τρ(s)/(2πs), acotado en ambos extremos del tramo
            ends = [x for x in (s0, s1) if x > 1]
            if ends:
                half = max(2 * tau * gauge.rho(x) / (2 * math.pi * x) for x in ends)
            else:
                half = 0.5
            for th in (th1, th2):
                rects.append((s0, s1, th - half, th + half))
    # ángulos relativos a θ1, reducidos a [0, 1) y partidos en la vuelta
    return [piece for rect in rects for piece in _wrap_turn(rect, th1)]


def _wrap_turn(rect, base):
    s0, s1, t0, t1 = rect
    if t1 - t0 >= 1.0:
        return [(s0, s1, 0.0, 1.0)]
    a = (t0 - base) % 1.0
    b = a + (t1 - t0)
    if b <= 1.0:
        return [(s0, s1, a, b)]
    return [(s0, s1, a, 1.0), (s0, s1, 0.0, b - 1.0)]


def _disk_band(gauge, disk, tau):
    reach = abs(disk.center) + disk.r
    radii = [x for x in (reach, max(abs(disk.center) - disk.r, 0.0)) if x > 1]
    rho = max(gauge.rho(x) for x in radii) if radii else gauge.rho(max(reach, 1.0 + 1e-9))
    return 2 * tau * rho


@dataclass(frozen=True)
class NeighborhoodMass:
    mass: float
    proxy: float
    flagged: bool

    @property
    def ratio(self):
        return self.mass / self.proxy if self.proxy > 0 else math.inf


def boundary_neighborhood(gauge, region, tau, weight=None):
    """
    γ((∂K)_{+τ}) sobreaproximada por engrosamiento radial/angular del borde.

    Cada arco se engruesa 2τρ(radio local) en radio y 2τρ/R en ángulo; la
    masa de la unión se calcula exactamente en coordenadas (s, θ). Se marca
    cuando el proxy de cuasi-constancia 4τρ(R)σ(R)/R difiere de la masa en
    más de un factor 2.

    Raises:
        DomainError: si τ ≤ 0 o la región es degenerada
    """
    weight = weight or gauge.weight
    if weight is None:
        raise DomainError("Se requiere un peso para la masa γ")
    if not tau > 0:
        raise DomainError("τ debe ser positivo", tau=tau)
    if region.is_degenerate:
        raise DomainError("Región degenerada", region=region.label())
    if isinstance(region, Disk) and not region.is_centered:
        delta = _disk_band(gauge, region, tau)
        outer = weight.gamma_mass(Disk(region.r + delta, region.center))
        inner = weight.gamma_mass(Disk(region.r - delta, region.center)) if region.r > delta else 0.0
        mass = outer - inner
        # sin proxy de cuasi-constancia para discos descentrados
        return NeighborhoodMass(mass, mass, False)
    if isinstance(region, Disk):
        region = AnnulusSector(0.0, region.r)
    elif not isinstance(region, AnnulusSector) or not region.is_centered:
        raise DomainError("Región no admitida", region=repr(region))
    mass = _union_mass(weight, _sector_rects(gauge, region, tau))
    proxy = 0.0
    for r in (region.r1, region.r2):
        if r > 1:
            span = region.span if region.is_full else region.span + 2 * tau * gauge.rho(r) / (2 * math.pi * r)
            proxy += 4 * tau * gauge.rho(r) * weight.sigma(r) / r * min(span, 1.0)
    flagged = proxy > 0 and not (1 / PROXY_TOLERANCE <= mass / proxy <= PROXY_TOLERANCE)
    if flagged:
        logger.warning(
            "Proxy de cuasi-constancia fuera de factor 2 en %s: masa %s, proxy %s",
            region.label(),
            mass,
            proxy,
        )
    return NeighborhoodMass(mass, proxy, flagged)


def boundary_neighborhood_mass(gauge, region, tau, weight=None):
    return boundary_neighborhood(gauge, region, tau, weight).mass


# ---------------------------------------------------------------------------
# Informe de discrepancia
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscrepancyRow:
    region: object
    count: int
    gamma: float
    discrepancy: float
    neighborhood: float
    bound: float
    ratio: float
    passed: bool
    proxy_flagged: bool = False

    def to_dict(self):
        return {
            "region": self.region.label(),
            "count": self.count,
            "gamma": self.gamma,
            "discrepancy": self.discrepancy,
            "neighborhood": self.neighborhood,
            "bound": self.bound,
            "ratio": self.ratio,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class DiscrepancyReport:
    rows: tuple
    tau: float
    C: float
    min_C: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(row.passed for row in self.rows)

    @property
    def pass_count(self):
        return sum(row.passed for row in self.rows)

    def summary(self):
        return {
            "rows": len(self.rows),
            "passed": self.pass_count,
            "tau": self.tau,
            "C": self.C,
            "min_C": self.min_C,
            **self.detail,
        }


def equidist_report(zero_counts, gauge, tau, C, weight=None):
    """
    |n_F(K) - γ(K)| frente a C·γ((∂K)_{+τ}) para cada región.

    El resumen incluye el menor C con el que todas las filas pasan.

    Raises:
        DomainError: si alguna fila no trae masa γ
    """
    rows = []
    for report in sorted(zero_counts, key=lambda rep: region_sort_key(rep.region)):
        if report.gamma_mass is None:
            raise DomainError("La fila no trae masa γ", region=report.region.label())
        nb = boundary_neighborhood(gauge, report.region, tau, weight)
        discrepancy = abs(report.count - report.gamma_mass)
        if nb.mass > 0:
            ratio = discrepancy / nb.mass
        else:
            ratio = 0.0 if discrepancy == 0 else math.inf
        bound = C * nb.mass
        rows.append(
            DiscrepancyRow(
                region=report.region,
                count=report.count,
                gamma=report.gamma_mass,
                discrepancy=discrepancy,
                neighborhood=nb.mass,
                bound=bound,
                ratio=ratio,
                passed=discrepancy <= bound,
                proxy_flagged=nb.flagged,
            )
        )
    min_C = max((row.ratio for row in rows), default=0.0)
    return DiscrepancyReport(tuple(rows), tau, C, min_C)


# ---------------------------------------------------------------------------
# Cota de Gauss en el retículo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeCheck:
    count: int
    area: float
    bound: float

    @property
    def delta(self):
        return abs(self.count - self.area)

    @property
    def passed(self):
        return self.delta <= self.bound

    def to_dict(self):
        return {
            "count": self.count,
            "area": self.area,
            "delta": self.delta,
            "bound": self.bound,
            "pass": self.passed,
        }


def lattice_count(region):
    """#(ℤ² ∩ K) por enumeración directa."""
    if isinstance(region, Disk):
        c, r = region.center, region.r
        xs = np.arange(math.ceil(c.real - r), math.floor(c.real + r) + 1, dtype=float)
        ys = np.arange(math.ceil(c.imag - r), math.floor(c.imag + r) + 1, dtype=float)
        dx2 = (xs - c.real) ** 2
        dy2 = (ys - c.imag) ** 2
        return int(np.count_nonzero(dx2[:, None] + dy2[None, :] <= r * r))
    if isinstance(region, Rectangle):
        nx = math.ceil(region.x1) - math.ceil(region.x0)
        ny = math.ceil(region.y1) - math.ceil(region.y0)
        return nx * ny
    raise DomainError("Región no admitida para el conteo en el retículo", region=repr(region))


def lattice_area(region):
    if isinstance(region, Disk):
        return math.pi * region.r**2
    return region.width * region.height


def boundary_band_area(region, d=SQRT2):
    """Medida de Lebesgue de la d-vecindad del borde."""
    if isinstance(region, Disk):
        r = region.r
        return math.pi * ((r + d) ** 2 - max(0.0, r - d) ** 2)
    w, h = region.width, region.height
    outer = (w + 2 * d) * (h + 2 * d) - (4 - math.pi) * d * d
    inner = max(0.0, w - 2 * d) * max(0.0, h - 2 * d)
    return outer - inner


def gauss_lattice_check(region):
    """|#(ℤ²∩K) - m(K)| frente a la medida de la √2-vecindad de ∂K."""
    return LatticeCheck(lattice_count(region), lattice_area(region), boundary_band_area(region))


# ---------------------------------------------------------------------------
# Transporte sobre familias finitas
# ---------------------------------------------------------------------------

def enlarge(gauge, region, tau, iterations=4):
    """
    U_{+τ} aproximada: el disco o sector crece τ·ρ, con ρ evaluado en el
    borde exterior ya ampliado (punto fijo de pocas iteraciones).
    """
    if tau == 0:
        return region
    if isinstance(region, Disk):
        reach = abs(region.center) + region.r
        delta = tau * gauge.rho(max(reach, 1.0 + 1e-9))
        for _ in range(iterations):
            delta = tau * max(gauge.rho(max(reach, 1.0 + 1e-9)), gauge.rho(reach + delta))
        return Disk(region.r + delta, region.center)
    if isinstance(region, AnnulusSector):
        d2 = tau * gauge.rho(region.r2)
        for _ in range(iterations):
            d2 = tau * max(gauge.rho(region.r2), gauge.rho(region.r2 + d2))
        r1 = region.r1
        d1 = tau * gauge.rho(r1) if r1 > 1 else r1
        if region.is_full:
            th1, th2 = region.theta1, region.theta2
        else:
            a = d2 / (2 * math.pi * max(r1 - d1, 1e-12)) if r1 - d1 > 0 else 0.5
            th1, th2 = region.theta1 - a, region.theta2 + a
            if th2 - th1 > 1:
                th1, th2 = region.theta1, region.theta1 + 1.0
        return AnnulusSector(max(r1 - d1, 0.0), region.r2 + d2, th1, th2, region.center)
    raise DomainError("Región no admitida para la ampliación", region=repr(region))


def _reach(region):
    return abs(region.center) + (region.r if isinstance(region, Disk) else region.r2)


@dataclass(frozen=True)
class TransportReport:
    tau_min: float
    rows: tuple
    tau_max: float
    iterations: int

    @property
    def finite(self):
        return math.isfinite(self.tau_min)

    def to_dict(self):
        return {
            "tau_min": self.tau_min,
            "tau_max": self.tau_max,
            "iterations": self.iterations,
            "regions": len(self.rows),
        }


def transport_check(
    regions,
    counter,
    gauge,
    reference=None,
    weight=None,
    tau_max=8.0,
    tol=1e-3,
    domain_radius=None,
):
    """
    Menor τ con γ₁(U) ≤ γ(U_{+τ}) y γ(U) ≤ γ₁(U_{+τ}) en toda la familia.

    Es un sustituto sobre una familia finita de la discrepancia Di_{d_ρ}.

    Args:
        regions: familia de discos / sectores
        counter: región → γ₁(región) (cantidad de puntos)
        reference: región → γ(región); por defecto la masa γ del peso
        domain_radius: radio del dominio donde `counter` es válido

    Raises:
        CoverageError: si alguna región ampliada sale del dominio
    """
    weight = weight or gauge.weight
    reference = reference or weight.gamma_mass
    regions = sorted(regions, key=region_sort_key)
    base = [(region, counter(region), reference(region)) for region in regions]
    rows = tuple((region.label(), count, mass) for region, count, mass in base)

    def holds(tau):
        for region, count, mass in base:
            wide = enlarge(gauge, region, tau)
            if domain_radius is not None and _reach(wide) > domain_radius:
                raise CoverageError(
                    "La región ampliada sale del dominio de ceros calculados",
                    region=wide.label(),
                    domain_radius=domain_radius,
                )
            if count > reference(wide) or mass > counter(wide):
                return False
        return True

    if holds(0.0):
        return TransportReport(0.0, rows, tau_max, 0)
    if not holds(tau_max):
        logger.warning("No hay τ ≤ %s que satisfaga la familia", tau_max)
        return TransportReport(math.inf, rows, tau_max, 0)
    lo, hi, steps = 0.0, tau_max, 0
    while hi - lo > tol * tau_max:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
        steps += 1
    return TransportReport(hi, rows, tau_max, steps)
