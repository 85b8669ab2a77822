# app_ceroslab/numerics/evaluator.py
"""
Evaluación normalizada F_ξ/μ, sumas de Weyl W_R(θ) y el promedio X(R, ϑ).

F_ξ(z) = Σ ξ(n)a(n)zⁿ se evalúa en la ventana central |k - ν| ≤ N con
N = A√(σ log σ); cada término se forma como exp(ω(k) - ω(ν)) para que
nunca se desborde. En radios pequeños (|z| ≤ 1 o σ < 3) la ventana
central no aplica y se suma la serie finita completa normalizada por su
término máximo; la normalización es siempre un factor real positivo, así
que el argumento de F no cambia.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.polynomial.legendre import leggauss
from scipy import optimize

from .arithmetic import compensated_sum, e_turns, neumaier_sum
from .bumps import DEFAULT_BUMP
from .errors import CapacityError, DomainError, NumericError, PreconditionError
from .weights import SmoothWeight

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_CONSTANT = 6.0
MIN_WINDOW_SIGMA = 3.0
# entradas máximas de una matriz término × punto
_CHUNK_ENTRIES = 4_000_000


def _unit_phases(k, theta):
    """e(kθ) con kθ reducido módulo 1 antes de exponenciar."""
    return e_turns(np.mod(np.multiply.outer(k, theta), 1.0))


@dataclass(frozen=True)
class SeriesSpec:
    """
    Peso + secuencia + configuración: define F_ξ y su evaluador normalizado.

    La secuencia debe empezar en 0 y cubrir [0, max_index).
    """

    weight: SmoothWeight
    sequence: object
    window_constant: float = DEFAULT_WINDOW_CONSTANT
    max_index: int = None

    def __post_init__(self):
        if not self.window_constant > 0:
            raise DomainError("La constante de ventana A debe ser positiva", A=self.window_constant)
        if self.sequence.n0 != 0:
            raise DomainError("La secuencia debe empezar en n = 0", n0=self.sequence.n0)
        max_index = self.sequence.n1 if self.max_index is None else int(self.max_index)
        if max_index > self.sequence.n1:
            raise DomainError(
                "max_index excede el rango de la secuencia",
                max_index=max_index,
                n1=self.sequence.n1,
            )
        object.__setattr__(self, "max_index", max_index)

    # -- ventanas ------------------------------------------------------------

    def central_window(self, R):
        """
        Ventana [n_lo, n_hi] con n_lo = max(0, ⌊ν-N⌋), n_hi = ⌈ν+N⌉.

        Raises:
            DomainError: si R ≤ 1 o σ(R) < 3
            CapacityError: si n_hi ≥ max_index
        """
        nu, sigma = self.weight.nu_sigma(R)
        if sigma < MIN_WINDOW_SIGMA:
            raise DomainError("La ventana central requiere σ(R) ≥ 3", R=R, sigma=sigma)
        N = self.window_constant * math.sqrt(sigma * math.log(sigma))
        n_lo = max(0, math.floor(nu - N))
        n_hi = math.ceil(nu + N)
        if n_hi >= self.max_index:
            raise CapacityError(
                "La ventana central excede max_index",
                required_max_index=n_hi + 1,
                max_index=self.max_index,
                R=R,
            )
        return n_lo, n_hi

    def required_max_index(self, R_max):
        """max_index mínimo para evaluar hasta R_max."""
        nu, sigma = self.weight.nu_sigma(R_max)
        return math.ceil(nu + self.window_constant * math.sqrt(sigma * math.log(sigma))) + 1

    @cached_property
    def min_window_radius(self):
        """Menor radio con σ ≥ 3 (y R > 1)."""
        w = self.weight
        target = 1.0 / MIN_WINDOW_SIGMA
        if w.dphi(0.0) <= target:
            t_star = 0.0
        else:
            hi = 1.0
            while w.dphi(hi) > target:
                hi *= 2.0
                if hi > w.t_max:
                    raise DomainError("σ nunca alcanza 3 en el dominio del peso")
            t_star = optimize.brentq(lambda t: w.dphi(t) - target, 0.0, hi, xtol=1e-12)
        return math.exp(max(w.phi(t_star), 1e-9)) * (1.0 + 1e-9)

    @cached_property
    def small_radius_top(self):
        """Índice máximo usado para radios por debajo de la ventana central."""
        return self.central_window(self.min_window_radius)[1]

    def oscillation_index(self, r):
        """Índice efectivo más alto a radio r: fija la escala angular 1/n de F."""
        if r < self.min_window_radius:
            return self.small_radius_top
        return self.central_window(r)[1]

    # -- evaluación ----------------------------------------------------------

    def _plan(self, r):
        """Por punto: ventana [k_lo, k_hi], log de la normalización y si usa ventana central."""
        r = np.asarray(r, dtype=float)
        windowed = r >= self.min_window_radius
        k_lo = np.zeros(r.shape, dtype=np.int64)
        k_hi = np.full(r.shape, self.small_radius_top if not windowed.all() else 0, dtype=np.int64)
        log_norm = np.full(r.shape, np.nan)
        if windowed.any():
            rw = r[windowed]
            log_r = np.log(rw)
            nu = np.asarray(self.weight.psi(log_r), dtype=float)
            sigma = np.asarray(self.weight.dpsi(log_r), dtype=float)
            N = self.window_constant * np.sqrt(sigma * np.log(sigma))
            k_lo[windowed] = np.maximum(0, np.floor(nu - N)).astype(np.int64)
            k_hi[windowed] = np.ceil(nu + N).astype(np.int64)
            log_norm[windowed] = [self.weight.log_mu(x) for x in rw]
        top = int(k_hi.max()) if k_hi.size else 0
        if top >= self.max_index:
            raise CapacityError(
                "La evaluación excede max_index",
                required_max_index=top + 1,
                max_index=self.max_index,
            )
        return k_lo, k_hi, log_norm

    def _evaluate_chunk(self, r, theta):
        k_lo, k_hi, log_norm = self._plan(r)
        k = np.arange(int(k_lo.min()), int(k_hi.max()) + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_r = np.log(r)
            L = np.where(k[:, None] == 0, 0.0, k[:, None] * log_r[None, :])
        L = L + np.asarray(self.weight.coeff_log(k), dtype=float)[:, None]
        L[(k[:, None] < k_lo[None, :]) | (k[:, None] > k_hi[None, :])] = -np.inf
        small = np.isnan(log_norm)
        if small.any():
            log_norm = log_norm.copy()
            log_norm[small] = L[:, small].max(axis=0)
        xi = self.sequence.values[k]
        terms = xi[:, None] * np.exp(L - log_norm[None, :]) * _unit_phases(k, theta)
        return neumaier_sum(terms, axis=0)

    def evaluate(self, z):
        """
        F_ξ(z) normalizado por un factor real positivo que depende solo de |z|.

        Para |z| en la ventana central el factor es μ(|z|).
        """
        z = np.asarray(z, dtype=np.complex128)
        flat = z.ravel()
        r = np.abs(flat)
        theta = np.mod(np.angle(flat) / (2 * np.pi), 1.0)
        out = np.empty(flat.shape, dtype=np.complex128)
        if flat.size == 0:
            return out.reshape(z.shape)
        _, k_hi, _ = self._plan(np.array([r.max()]))
        step = max(1, _CHUNK_ENTRIES // max(1, int(k_hi[0]) + 1))
        order = np.argsort(r, kind="stable")
        for start in range(0, flat.size, step):
            idx = order[start : start + step]
            out[idx] = self._evaluate_chunk(r[idx], theta[idx])
        return out.reshape(z.shape)

    def evaluate_circle(self, r, M):
        """F normalizado en r·e(j/M), j = 0..M-1, por FFT."""
        k_lo, k_hi, log_norm = self._plan(np.array([float(r)]))
        k = np.arange(int(k_lo[0]), int(k_hi[0]) + 1)
        with np.errstate(divide="ignore"):
            L = np.where(k == 0, 0.0, k * math.log(r)) if r > 0 else np.where(k == 0, 0.0, -np.inf)
        L = L + np.asarray(self.weight.coeff_log(k), dtype=float)
        norm = log_norm[0] if not np.isnan(log_norm[0]) else L.max()
        coeffs = self.sequence.values[k] * np.exp(L - norm)
        bins = np.zeros(M, dtype=np.complex128)
        np.add.at(bins, k % M, coeffs)
        return np.fft.ifft(bins) * M

    def eval_normalized(self, R, theta):
        """
        Σ_{n_lo≤k≤n_hi} ξ(k) e(kθ) exp(ω(k) - ω(ν)), suma compensada.

        Raises:
            CapacityError: si la ventana excede max_index
        """
        n_lo, n_hi = self.central_window(R)
        k = np.arange(n_lo, n_hi + 1)
        L = k * math.log(R) + np.asarray(self.weight.coeff_log(k), dtype=float) - self.weight.log_mu(R)
        terms = self.sequence.values[k] * np.exp(L) * e_turns(np.mod(k * float(theta), 1.0))
        return compensated_sum(terms)

    def weyl(self, R, theta):
        """W_R(θ) = Σ_{|n-ν|≤N} ξ(n) e(nθ) exp(-(n-ν)²/(2σ)); θ escalar o arreglo."""
        nu, sigma = self.weight.nu_sigma(R)
        n_lo, n_hi = self.central_window(R)
        k = np.arange(n_lo, n_hi + 1)
        u = self.sequence.values[k] * np.exp(-((k - nu) ** 2) / (2.0 * sigma))
        if np.ndim(theta) == 0:
            return compensated_sum(u * e_turns(np.mod(k * float(theta), 1.0)))
        theta = np.asarray(theta, dtype=float)
        return _unit_phases(theta, k) @ u

    def full_sum(self, z, degree):
        """
        (Σ_{k≤degree} ξ(k)a(k)z^k)/μ(|z|) en dominio logarítmico.

        Sirve como oráculo de la ventana central cuando la serie completa cabe.
        """
        z = complex(z)
        R = abs(z)
        if degree >= self.sequence.n1:
            raise CapacityError("El grado excede la secuencia", required_max_index=degree + 1)
        k = np.arange(0, degree + 1)
        L = k * math.log(R) + np.asarray(self.weight.coeff_log(k), dtype=float) - self.weight.log_mu(R)
        theta = math.atan2(z.imag, z.real) / (2 * math.pi)
        terms = self.sequence.values[k] * np.exp(L) * e_turns(np.mod(k * theta, 1.0))
        return compensated_sum(terms)

    def describe(self):
        return {
            "weight": self.weight.to_dict(),
            "sequence": self.sequence.label,
            "seed": self.sequence.seed,
            "window_constant": self.window_constant,
            "max_index": self.max_index,
        }


# ---------------------------------------------------------------------------
# Operaciones sobre SeriesSpec
# ---------------------------------------------------------------------------

def central_window(spec, R):
    return spec.central_window(R)


def eval_normalized(spec, R, theta):
    return spec.eval_normalized(R, theta)


def weyl_sum(spec, R, theta):
    return spec.weyl(R, theta)


def admissible_beta(sigma):
    """Escala mínima √(log σ/σ) de β."""
    return math.sqrt(math.log(sigma) / sigma)


def _x_quadrature(spec, R, vartheta, beta, g, s_nodes, theta_nodes):
    xs, ws = leggauss(s_nodes)
    xt, wt = leggauss(theta_nodes)
    R_hi = R * (1 + beta)
    s = 0.5 * (R_hi - R) * xs + 0.5 * (R_hi + R)
    ws = 0.5 * (R_hi - R) * ws
    theta = vartheta + 0.5 * beta * xt
    wt = 0.5 * beta * wt * np.asarray(g((vartheta - theta) / beta), dtype=float)
    parts = []
    for si, wi in zip(s, ws):
        _, sigma = spec.weight.nu_sigma(si)
        W = spec.weyl(si, theta)
        parts.append(wi * sigma / si * math.fsum(wt * np.abs(W) ** 2))
    return math.fsum(parts)


def x_statistic(
    spec,
    R,
    vartheta,
    beta,
    g=None,
    s_nodes=64,
    theta_nodes=256,
    rtol=1e-6,
    max_doublings=5,
):
    """
    X = ∫_R^{R(1+β)} ∫ |W_s(θ)|² g(β⁻¹(ϑ-θ)) dθ dν(s), con dν(s) = σ(s)/s ds.

    Cuadratura tensorial de Gauss–Legendre: nodos en s sobre [R, R(1+β)] y
    en θ sobre el soporte de la función de prueba; los nodos se duplican
    hasta que el valor se estabiliza. El espaciado en θ nunca supera 1/(4ν).

    Args:
        g: función de prueba vectorizada con soporte en (-½, ½) e ∫g = 1

    Raises:
        PreconditionError: si β está fuera de [√(log σ/σ), 1)
        NumericError: si la cuadratura no se estabiliza
    """
    g = g or DEFAULT_BUMP
    nu, sigma = spec.weight.nu_sigma(R)
    if not 0 < beta < 1 or beta < admissible_beta(sigma):
        raise PreconditionError(
            "β fuera del rango admisible", beta=beta, minimo=admissible_beta(sigma)
        )
    nu_hi = spec.weight.nu(R * (1 + beta))
    spec.central_window(R * (1 + beta))
    theta_nodes = max(theta_nodes, math.ceil(4 * nu_hi * beta))
    previous = None
    for level in range(max_doublings + 1):
        value = _x_quadrature(spec, R, vartheta, beta, g, s_nodes, theta_nodes)
        logger.debug("X con %s×%s nodos: %s", s_nodes, theta_nodes, value)
        if previous is not None and abs(value - previous) <= rtol * abs(value):
            return value
        previous = value
        s_nodes *= 2
        theta_nodes *= 2
    raise NumericError(
        "La cuadratura de X no se estabilizó",
        ultimo=value,
        anterior=previous,
        s_nodes=s_nodes // 2,
        theta_nodes=theta_nodes // 2,
    )


@dataclass(frozen=True)
class WeylWitness:
    R: float
    theta: float
    modulus: float
    threshold: float
    grid: tuple = field(default=())

    @property
    def found(self):
        return self.modulus >= self.threshold

    def to_dict(self):
        return {
            "R": self.R,
            "theta": self.theta,
            "modulus": self.modulus,
            "threshold": self.threshold,
            "found": self.found,
            "grid": list(self.grid),
        }


def weyl_witness(spec, R, vartheta, beta, threshold, n_r=32, n_theta=None):
    """
    Búsqueda en malla de max |W_{R'}(θ')| sobre [R, R(1+β)] × (ϑ-β, ϑ+β).

    Returns:
        WeylWitness: el punto de la malla con mayor |W| y si alcanza el umbral
    """
    nu_hi = spec.weight.nu(R * (1 + beta))
    if n_theta is None:
        n_theta = max(128, math.ceil(8 * nu_hi * beta))
    radii = np.linspace(R, R * (1 + beta), n_r)
    thetas = vartheta - beta + (np.arange(n_theta) + 0.5) * (2 * beta / n_theta)
    best = (R, vartheta, -1.0)
    for s in radii:
        modulus = np.abs(spec.weyl(float(s), thetas))
        j = int(np.argmax(modulus))
        if modulus[j] > best[2]:
            best = (float(s), float(thetas[j]), float(modulus[j]))
    return WeylWitness(best[0], best[1], best[2], threshold, (n_r, n_theta))


# ---------------------------------------------------------------------------
# Polinomios explícitos
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolynomialSeries:
    """
    Polinomio Σ c_k z^k guardado como log|c_k| y fase unitaria.

    Se evalúa normalizado por su término máximo en |z|, como SeriesSpec,
    de modo que `zeros` trabaja igual sobre polinomios.
    """

    log_modulus: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)
    label: str = "polynomial"

    def __post_init__(self):
        log_mod = np.asarray(self.log_modulus, dtype=float)
        unit = np.asarray(self.unit, dtype=np.complex128)
        if log_mod.shape != unit.shape or log_mod.ndim != 1:
            raise DomainError("Coeficientes mal formados")
        if not np.isfinite(log_mod).any():
            raise DomainError("El polinomio es idénticamente nulo")
        log_mod.setflags(write=False)
        unit.setflags(write=False)
        object.__setattr__(self, "log_modulus", log_mod)
        object.__setattr__(self, "unit", unit)

    @classmethod
    def from_coefficients(cls, coeffs, label="polynomial"):
        c = np.asarray(coeffs, dtype=np.complex128)
        mod = np.abs(c)
        with np.errstate(divide="ignore"):
            log_mod = np.log(mod)
        unit = np.where(mod > 0, c / np.where(mod > 0, mod, 1.0), 0)
        return cls(log_mod, unit, label)

    @classmethod
    def from_roots(cls, roots):
        return cls.from_coefficients(P.polyfromroots(np.asarray(roots, dtype=np.complex128)), "roots")

    @classmethod
    def monomial(cls, d):
        c = np.zeros(d + 1, dtype=np.complex128)
        c[d] = 1.0
        return cls.from_coefficients(c, f"z^{d}")

    @classmethod
    def truncation(cls, spec, degree):
        """Truncación Σ_{k≤d} ξ(k)a(k)z^k de F_ξ, sin exponenciar a(k)."""
        if degree >= spec.sequence.n1:
            raise CapacityError("El grado excede la secuencia", required_max_index=degree + 1)
        xi = spec.sequence.values[: degree + 1]
        mod = np.abs(xi)
        with np.errstate(divide="ignore"):
            log_mod = np.log(mod) + np.asarray(spec.weight.coeff_log(np.arange(degree + 1)), float)
        unit = np.where(mod > 0, xi / np.where(mod > 0, mod, 1.0), 0)
        return cls(log_mod, unit, f"truncation(d={degree})")

    @property
    def degree(self):
        return int(np.flatnonzero(np.isfinite(self.log_modulus))[-1])

    def oscillation_index(self, r):
        return self.degree

    def cauchy_log_radius(self):
        """
        log(1 + max_{k<d} |c_k/c_d|): todas las raíces quedan dentro.

        Para contar las d raíces conviene reescalar y usar el disco unidad,
        `poly.scaled(poly.cauchy_log_radius())` con `Disk(1.0)`, en lugar de
        `Disk(exp(...))`: el radio de Cauchy desborda un float para d ≥ 500.
        """
        d = self.degree
        if d == 0:
            return 0.0
        ratios = self.log_modulus[:d] - self.log_modulus[d]
        return float(np.logaddexp(0.0, np.max(ratios)))

    def scaled(self, log_factor):
        """Polinomio p(e^{log_factor}·w): sus raíces se dividen por e^{log_factor}."""
        k = np.arange(self.log_modulus.size)
        return PolynomialSeries(self.log_modulus + k * log_factor, self.unit, self.label)

    def evaluate(self, z):
        z = np.asarray(z, dtype=np.complex128)
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        k = np.arange(self.log_modulus.size)
        live = np.isfinite(self.log_modulus)
        k, log_mod, unit = k[live], self.log_modulus[live], self.unit[live]
        step = max(1, _CHUNK_ENTRIES // k.size)
        for start in range(0, flat.size, step):
            w = flat[start : start + step]
            r = np.abs(w)
            theta = np.mod(np.angle(w) / (2 * np.pi), 1.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                L = np.where(k[:, None] == 0, 0.0, k[:, None] * np.log(r)[None, :])
            L = L + log_mod[:, None]
            L = L - L.max(axis=0)[None, :]
            terms = unit[:, None] * np.exp(L) * _unit_phases(k, theta)
            out[start : start + step] = neumaier_sum(terms, axis=0)
        return out.reshape(z.shape)

    def evaluate_circle(self, r, M):
        k = np.flatnonzero(np.isfinite(self.log_modulus))
        with np.errstate(divide="ignore"):
            L = np.where(k == 0, 0.0, k * (math.log(r) if r > 0 else -np.inf))
        L = L + self.log_modulus[k]
        coeffs = self.unit[k] * np.exp(L - L.max())
        bins = np.zeros(M, dtype=np.complex128)
        np.add.at(bins, k % M, coeffs)
        return np.fft.ifft(bins) * M
