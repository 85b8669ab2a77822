# app_ceroslab/numerics/weights.py
"""
Coeficientes suaves a(n) = exp(-∫₀ⁿ φ) y las magnitudes derivadas.

φ es no negativa, creciente, cóncava, con φ(0) = 0 y φ' → 0. A partir de
su inversa ψ = φ⁻¹ se definen el índice central suavizado ν = ψ∘log,
σ = ψ'∘log, el término máximo suavizado log μ(R) = ∫₀^{log R} ψ, la fase
ω_R(t) = t log R - ∫₀ᵗ φ y la medida de referencia γ con γ(R·D) = ν(R).

Todo el trabajo con coeficientes se hace en dominio logarítmico.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, NumericError, OutOfDomainError, OutOfRangeError
from .regions import AnnulusSector, Disk

logger = logging.getLogger(__name__)

DEFAULT_INVERSION_TOL = 1e-12
DEFAULT_QUADRATURE_TOL = 1e-10


class WeightKind(str, Enum):
    LOG = "log_family"
    POWER = "power_family"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class WeightFamily:
    """
    Familia de funciones φ.

    - log_family(α): φ(t) = α·ln(1+t)
    - power_family(β, c): φ(t) = c((1+t)^β - 1), β ∈ (0, 1)
    - tabulated: malla de pares (t, φ(t)) estrictamente crecientes con φ(0) = 0
    """

    kind: WeightKind
    alpha: float = None
    beta: float = None
    c: float = None
    grid_t: tuple = None
    grid_phi: tuple = None

    def __post_init__(self):
        kind = WeightKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is WeightKind.LOG:
            if self.alpha is None or not self.alpha > 0:
                raise DomainError("log_family requiere α > 0", alpha=self.alpha)
        elif kind is WeightKind.POWER:
            if self.beta is None or not 0 < self.beta < 1:
                raise DomainError("power_family requiere β en (0, 1)", beta=self.beta)
            if self.c is None or not self.c > 0:
                raise DomainError("power_family requiere c > 0", c=self.c)
        else:
            t = np.asarray(self.grid_t, dtype=float)
            phi = np.asarray(self.grid_phi, dtype=float)
            if t.ndim != 1 or t.shape != phi.shape or t.size < 3:
                raise DomainError("La malla tabulada necesita al menos 3 pares (t, φ)")
            if t[0] != 0 or phi[0] != 0:
                raise DomainError("La malla tabulada debe empezar en (0, 0)")
            if np.any(np.diff(t) <= 0) or np.any(np.diff(phi) <= 0):
                raise DomainError("La malla tabulada debe ser estrictamente creciente en t y en φ")
            object.__setattr__(self, "grid_t", tuple(float(x) for x in t))
            object.__setattr__(self, "grid_phi", tuple(float(x) for x in phi))

    @classmethod
    def log_family(cls, alpha):
        return cls(WeightKind.LOG, alpha=float(alpha))

    @classmethod
    def power_family(cls, beta, c=1.0):
        return cls(WeightKind.POWER, beta=float(beta), c=float(c))

    @classmethod
    def tabulated(cls, grid_t, grid_phi):
        return cls(WeightKind.TABULATED, grid_t=tuple(grid_t), grid_phi=tuple(grid_phi))

    def to_dict(self):
        if self.kind is WeightKind.LOG:
            return {"kind": self.kind.value, "alpha": self.alpha}
        if self.kind is WeightKind.POWER:
            return {"kind": self.kind.value, "beta": self.beta, "c": self.c}
        return {"kind": self.kind.value, "grid_t": list(self.grid_t), "grid_phi": list(self.grid_phi)}

    @classmethod
    def from_dict(cls, data):
        kind = WeightKind(data["kind"])
        if kind is WeightKind.LOG:
            return cls.log_family(data["alpha"])
        if kind is WeightKind.POWER:
            return cls.power_family(data["beta"], data.get("c", 1.0))
        return cls.tabulated(data["grid_t"], data["grid_phi"])


@dataclass(frozen=True)
class RegularityRow:
    t: float
    dphi: float
    d2phi: float
    ratio_lower: float  # |φ''| / (φ')^{2+ε}, debe quedar acotado inferiormente
    ratio_upper: float  # |φ''| / (φ')^{2-ε}, debe quedar acotado superiormente
    delta: float  # Δ(1/φ') puntual = |φ''| / (φ')²
    flagged: bool


def _scalar_or_array(values, scalar):
    return float(values) if scalar else values


@dataclass(frozen=True)
class SmoothWeight:
    """
    Peso suave inmutable: todas sus operaciones son puras.

    Las familias paramétricas usan fórmulas cerradas; la familia tabulada
    usa interpolación cúbica monótona (PCHIP) y sus derivadas.
    """

    family: WeightFamily
    inversion_tol: float = DEFAULT_INVERSION_TOL
    quadrature_tol: float = DEFAULT_QUADRATURE_TOL
    name: str = field(default="", compare=False)

    @classmethod
    def log_family(cls, alpha, **kwargs):
        return cls(WeightFamily.log_family(alpha), **kwargs)

    @classmethod
    def power_family(cls, beta, c=1.0, **kwargs):
        return cls(WeightFamily.power_family(beta, c), **kwargs)

    @classmethod
    def tabulated(cls, grid_t, grid_phi, **kwargs):
        return cls(WeightFamily.tabulated(grid_t, grid_phi), **kwargs)

    @property
    def kind(self):
        return self.family.kind

    @property
    def has_closed_form(self):
        return self.family.kind is not WeightKind.TABULATED

    # -- interpolante de la familia tabulada --------------------------------

    @cached_property
    def _interp(self):
        return PchipInterpolator(self.family.grid_t, self.family.grid_phi, extrapolate=False)

    @cached_property
    def _interp_d1(self):
        return self._interp.derivative(1)

    @cached_property
    def _interp_d2(self):
        return self._interp.derivative(2)

    @cached_property
    def _interp_integral(self):
        return self._interp.antiderivative()

    @property
    def t_max(self):
        if self.family.kind is WeightKind.TABULATED:
            return self.family.grid_t[-1]
        return math.inf

    @property
    def phi_max(self):
        if self.family.kind is WeightKind.TABULATED:
            return self.family.grid_phi[-1]
        return math.inf

    def _check_t(self, t):
        if np.any(t < 0):
            raise DomainError("φ está definida solo para t ≥ 0")
        if np.any(t > self.t_max):
            raise OutOfDomainError(
                "t fuera de la malla tabulada", t_max=self.t_max, t=float(np.max(t))
            )

    # -- φ y sus derivadas ---------------------------------------------------

    def phi(self, t):
        """φ(t) (escalar o arreglo)."""
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        self._check_t(t)
        fam = self.family
        if fam.kind is WeightKind.LOG:
            out = fam.alpha * np.log1p(t)
        elif fam.kind is WeightKind.POWER:
            out = fam.c * np.expm1(fam.beta * np.log1p(t))
        else:
            out = self._interp(t)
        return _scalar_or_array(out, scalar)

    def dphi(self, t):
        """φ'(t)."""
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        self._check_t(t)
        fam = self.family
        if fam.kind is WeightKind.LOG:
            out = fam.alpha / (1.0 + t)
        elif fam.kind is WeightKind.POWER:
            out = fam.c * fam.beta * (1.0 + t) ** (fam.beta - 1.0)
        else:
            out = self._interp_d1(t)
        return _scalar_or_array(out, scalar)

    def d2phi(self, t):
        """φ''(t); para la familia tabulada, derivada del interpolante."""
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        self._check_t(t)
        fam = self.family
        if fam.kind is WeightKind.LOG:
            out = -fam.alpha / (1.0 + t) ** 2
        elif fam.kind is WeightKind.POWER:
            out = fam.c * fam.beta * (fam.beta - 1.0) * (1.0 + t) ** (fam.beta - 2.0)
        else:
            out = self._interp_d2(t)
        return _scalar_or_array(out, scalar)

    def phi_integral(self, t):
        """∫₀ᵗ φ, en forma cerrada o por la antiderivada exacta del interpolante."""
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        self._check_t(t)
        fam = self.family
        if fam.kind is WeightKind.LOG:
            out = fam.alpha * ((1.0 + t) * np.log1p(t) - t)
        elif fam.kind is WeightKind.POWER:
            b1 = fam.beta + 1.0
            out = fam.c * (np.expm1(b1 * np.log1p(t)) / b1 - t)
        else:
            out = self._interp_integral(t)
        return _scalar_or_array(out, scalar)

    # -- ψ = φ⁻¹ -------------------------------------------------------------

    def psi(self, s):
        """ψ(s) con φ(ψ(s)) = s."""
        scalar = np.ndim(s) == 0
        s = np.asarray(s, dtype=float)
        if np.any(s < 0):
            raise DomainError("ψ está definida solo para s ≥ 0")
        if np.any(s > self.phi_max):
            raise OutOfRangeError(
                "s excede el supremo de φ en la malla tabulada", phi_max=self.phi_max
            )
        fam = self.family
        if fam.kind is WeightKind.LOG:
            out = np.expm1(s / fam.alpha)
        elif fam.kind is WeightKind.POWER:
            out = np.expm1(np.log1p(s / fam.c) / fam.beta)
        else:
            out = np.vectorize(self._invert, otypes=[float])(s)
        return _scalar_or_array(out, scalar)

    def dpsi(self, s):
        """ψ'(s) = 1/φ'(ψ(s))."""
        scalar = np.ndim(s) == 0
        s = np.asarray(s, dtype=float)
        fam = self.family
        if fam.kind is WeightKind.LOG:
            out = np.exp(s / fam.alpha) / fam.alpha
        elif fam.kind is WeightKind.POWER:
            out = np.exp((1.0 / fam.beta - 1.0) * np.log1p(s / fam.c)) / (fam.c * fam.beta)
        else:
            out = 1.0 / np.asarray(self.dphi(np.asarray(self.psi(s))))
        return _scalar_or_array(out, scalar)

    def _invert(self, s):
        """Newton acotado con respaldo de bisección sobre la malla tabulada."""
        if s == 0:
            return 0.0
        grid_t = self.family.grid_t
        lo, hi = 0.0, grid_t[-1]
        t = float(np.interp(s, self.family.grid_phi, grid_t))
        for _ in range(200):
            f = float(self._interp(t)) - s
            if f > 0:
                hi = t
            else:
                lo = t
            d = float(self._interp_d1(t))
            t_new = t - f / d if d > 0 else 0.5 * (lo + hi)
            if not lo <= t_new <= hi:
                t_new = 0.5 * (lo + hi)
            if abs(t_new - t) <= self.inversion_tol * max(1.0, abs(t)):
                return t_new
            t = t_new
        raise NumericError("La inversión de φ no convergió", s=s, bracket=[lo, hi])

    # -- ν, σ, μ, ω ------------------------------------------------------------

    def nu_sigma(self, R):
        """
        Índice central suavizado y ancho del bloque central.

        Args:
            R (float): radio, R > 1

        Returns:
            tuple: (ν(R), σ(R)) con ν = ψ(ln R) y σ = 1/φ'(ν)

        Raises:
            DomainError: si R ≤ 1
        """
        if not R > 1:
            raise DomainError("ν y σ requieren R > 1", R=R)
        nu = self.psi(math.log(R))
        return nu, 1.0 / self.dphi(nu)

    def nu(self, R):
        """ν(R), extendida por 0 para R ≤ 1 (γ no tiene masa en el disco unidad)."""
        scalar = np.ndim(R) == 0
        R = np.asarray(R, dtype=float)
        log_r = np.log(np.maximum(R, 1.0))
        out = np.asarray(self.psi(log_r), dtype=float)
        return _scalar_or_array(out, scalar)

    def sigma(self, R):
        """σ(R) = ψ'(ln R)."""
        return self.nu_sigma(R)[1]

    def log_mu(self, R, method="auto"):
        """
        log μ(R) = ∫₀^{ln R} ψ.

        Args:
            R (float): radio, R ≥ 1
            method (str): "auto" usa la forma cerrada cuando existe;
                "quadrature" fuerza la cuadratura adaptativa

        Returns:
            float: log μ(R)
        """
        if not R >= 1:
            raise DomainError("log μ requiere R ≥ 1", R=R)
        L = math.log(R)
        if L == 0:
            return 0.0
        fam = self.family
        if method == "auto" and fam.kind is WeightKind.LOG:
            return fam.alpha * math.expm1(L / fam.alpha) - L
        if method == "auto" and fam.kind is WeightKind.POWER:
            ratio = (1.0 + fam.beta) / fam.beta
            return fam.c * fam.beta / (1.0 + fam.beta) * math.expm1(ratio * math.log1p(L / fam.c)) - L
        value, err = integrate.quad(
            lambda s: float(self.psi(s)), 0.0, L, epsabs=self.quadrature_tol, epsrel=0.0, limit=200
        )
        if err > 10 * self.quadrature_tol * max(1.0, abs(value)):
            raise NumericError("La cuadratura de log μ no alcanzó la tolerancia", estimado=err)
        return value

    def coeff_log(self, n, method="auto"):
        """
        log a(n) = -∫₀ⁿ φ, sin materializar nunca a(n).

        Args:
            n: índice o arreglo de índices no negativos
            method (str): "auto" o "quadrature" (verificación cruzada)
        """
        if method == "quadrature":
            if np.ndim(n) != 0:
                return np.array([self.coeff_log(k, method) for k in np.asarray(n).ravel()])
            if n < 0:
                raise DomainError("n debe ser no negativo", n=n)
            value, _ = integrate.quad(
                lambda t: float(self.phi(t)), 0.0, float(n),
                epsabs=self.quadrature_tol, epsrel=1e-13, limit=200,
            )
            return -value
        scalar = np.ndim(n) == 0
        out = -np.asarray(self.phi_integral(np.asarray(n, dtype=float)), dtype=float)
        return _scalar_or_array(out, scalar)

    def omega(self, R, t):
        """ω_R(t) = t ln R - ∫₀ᵗ φ; satisface ω(ν) = log μ(R) y ω''(ν) = -1/σ."""
        if not R > 1:
            raise DomainError("ω requiere R > 1", R=R)
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        out = t * math.log(R) - np.asarray(self.phi_integral(t), dtype=float)
        return _scalar_or_array(out, scalar)

    def delta_at(self, R):
        """Δ(σ) puntual en t = ν(R): |φ''(ν)|·σ²."""
        nu, sigma = self.nu_sigma(R)
        return abs(self.d2phi(nu)) * sigma * sigma

    def taylor_remainder(self, R, t):
        """
        Resto cúbico |ω(ν+t) - ω(ν) + t²/(2σ)| y su majorante σ⁻²Δ(σ)|t|³.

        Returns:
            tuple: (resto, majorante sin constante)
        """
        nu, sigma = self.nu_sigma(R)
        t = np.asarray(t, dtype=float)
        if np.any(nu + t < 0):
            raise DomainError("ν + t debe ser no negativo")
        rem = np.abs(self.omega(R, nu + t) - self.omega(R, nu) + t * t / (2 * sigma))
        bound = self.delta_at(R) * np.abs(t) ** 3 / sigma**2
        return rem, bound

    # -- medida de referencia γ ----------------------------------------------

    def gamma_mass(self, region):
        """
        Masa γ de un disco o de un sector anular (ángulos en vueltas).

        Para discos centrados, γ(D(0, R)) = ν(R) (0 si R ≤ 1); para un sector
        anular, (θ2 - θ1)·(ν(r2) - ν(r1)); para discos descentrados se integra
        ν'(s) por la fracción angular de la circunferencia |w| = s dentro del disco.

        Raises:
            DomainError: si la región no es un disco ni un sector anular
        """
        if isinstance(region, AnnulusSector):
            if not region.is_centered:
                raise DomainError("γ de sectores requiere centro en el origen", region=region.label())
            if region.is_degenerate:
                return 0.0
            return region.span * (self.nu(region.r2) - self.nu(region.r1))
        if isinstance(region, Disk):
            if region.is_centered:
                return self.nu(region.r)
            return self._offcenter_disk_mass(abs(region.center), region.r)
        raise DomainError("Región no admitida para γ", region=repr(region))

    def _offcenter_disk_mass(self, d, r):
        inner = max(r - d, 0.0)
        mass = self.nu(inner) if inner > 1 else 0.0
        lo, hi = max(abs(d - r), 1.0), d + r
        if hi <= lo:
            return mass

        def integrand(s):
            cos_half = (s * s + d * d - r * r) / (2.0 * s * d)
            frac = math.acos(min(1.0, max(-1.0, cos_half))) / math.pi
            _, sigma = self.nu_sigma(s)
            return sigma / s * frac

        value, err = integrate.quad(
            integrand, lo, hi, epsabs=self.quadrature_tol, epsrel=1e-10, limit=200
        )
        logger.debug("γ de disco descentrado d=%s r=%s: %s (err %s)", d, r, value, err)
        return mass + value

    # -- informe de regularidad ----------------------------------------------

    def regularity_report(self, t_grid, eps, lower_bound=1e-3, upper_bound=1e3):
        """
        Informe de la condición (φ')^{2+ε} ≲ |φ''| ≲ (φ')^{2-ε} sobre una malla.

        Se marca una fila cuando |φ''|/(φ')^{2+ε} < lower_bound o
        |φ''|/(φ')^{2-ε} > upper_bound. Δ se informa puntualmente como
        |φ''|/(φ')²; su clasificación queda en manos de quien lee el informe.
        """
        if not eps > 0:
            raise DomainError("ε debe ser positivo", eps=eps)
        t = np.asarray(t_grid, dtype=float)
        if np.any(t <= 0):
            raise DomainError("Los puntos de la malla deben ser positivos")
        d1 = np.asarray(self.dphi(t), dtype=float)
        d2 = np.abs(np.asarray(self.d2phi(t), dtype=float))
        rows = []
        for ti, a, b in zip(t, d1, d2):
            lower = b / a ** (2 + eps)
            upper = b / a ** (2 - eps)
            rows.append(
                RegularityRow(
                    t=float(ti),
                    dphi=float(a),
                    d2phi=-float(b),
                    ratio_lower=float(lower),
                    ratio_upper=float(upper),
                    delta=float(b / (a * a)),
                    flagged=bool(lower < lower_bound or upper > upper_bound),
                )
            )
        return rows

    def to_dict(self):
        return {
            "family": self.family.to_dict(),
            "inversion_tol": self.inversion_tol,
            "quadrature_tol": self.quadrature_tol,
        }

    @classmethod
    def from_dict(cls, data):
        family = data.get("family", data)
        return cls(
            WeightFamily.from_dict(family),
            inversion_tol=data.get("inversion_tol", DEFAULT_INVERSION_TOL),
            quadrature_tol=data.get("quadrature_tol", DEFAULT_QUADRATURE_TOL),
        )
