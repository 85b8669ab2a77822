# app_ceroslab/numerics/correlations.py
"""
Correlaciones binarias, máximos de sumas parciales S*, modelos espectrales
y verificadores de hipótesis de las proposiciones de no-hueco.

Notación: ν, σ son las del peso (σ = ψ'∘log); la correlación de Mahler
de Thue–Morse se llama `tm_sigma` para no confundirlas.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .arithmetic import (
    compensated_cumsum,
    compensated_sum,
    derive_seed,
    e_turns,
    prime_sieve,
    reduce_mod1,
    squarefree_mask,
    two_prod,
)
from .bumps import DEFAULT_BUMP
from .errors import CapacityError, DomainError, PreconditionError
from .sequences import Multiplier, MultiplierKind, generate

logger = logging.getLogger(__name__)

SIX_OVER_PI2 = 6.0 / math.pi**2
DEFAULT_PRIME_CUTOFF = 10**6
MAX_MATERIALIZED_ATOMS = 3_000_000


# ---------------------------------------------------------------------------
# Correlaciones empíricas
# ---------------------------------------------------------------------------

def autocorr(seq, X, h):
    """
    Correlación empírica (1/X) Σ_{0≤n<X} ξ(n)·conj ξ(n+h).

    Raises:
        RangeError: si el buffer no cubre [0, X+h)
    """
    if X < 1 or h < 0:
        raise DomainError("Se requiere X ≥ 1 y h ≥ 0", X=X, h=h)
    values = seq.window(0, X + h)
    return compensated_sum(values[:X] * np.conj(values[h : X + h])) / X


def correlation_sum(seq, M1, M2, h):
    """Σ_{M1≤s≤M2} ξ(s)·conj ξ(s+h), suma compensada."""
    values = seq.window(M1, M2 + h + 1)
    n = M2 - M1 + 1
    return compensated_sum(values[:n] * np.conj(values[h : h + n]))


def s_star(seq, M1, M2, h):
    """
    S*(M1, M2; h) = max_{M1≤k≤M2} |Σ_{k≤s≤M2} ξ(s)·conj ξ(s+h)|.

    Una sola pasada hacia atrás acumulando la suma de sufijos con corrección
    de redondeo.

    Raises:
        RangeError: si el buffer no cubre [M1, M2+h]
    """
    if not 0 <= M1 <= M2 or h < 0:
        raise DomainError("Se requiere 0 ≤ M1 ≤ M2 y h ≥ 0", M1=M1, M2=M2, h=h)
    values = seq.window(M1, M2 + h + 1)
    n = M2 - M1 + 1
    products = values[:n] * np.conj(values[h : h + n])
    suffix = compensated_cumsum(products[::-1])
    return float(np.max(np.abs(suffix)))


def s_star_profile(seq, M1, M2, h_max):
    """S*(M1, M2; h) para h = 1..h_max."""
    return np.array([s_star(seq, M1, M2, h) for h in range(1, h_max + 1)])


# ---------------------------------------------------------------------------
# Constantes de Mirsky y Mahler
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerProduct:
    value: float
    cutoff: int
    tail_bound: float  # cota de Σ_{p>cutoff} 2/p²


@lru_cache(maxsize=8)
def mirsky_product(prime_cutoff=DEFAULT_PRIME_CUTOFF):
    """D = ∏_{p≤cutoff} (1 - 2/p²) con la cota de la cola."""
    primes = prime_sieve(prime_cutoff).astype(np.float64)
    value = math.exp(math.fsum(np.log1p(-2.0 / primes**2)))
    tail = 2.0 / (prime_cutoff * math.log(prime_cutoff))
    return EulerProduct(value=value, cutoff=prime_cutoff, tail_bound=tail)


def square_part_primes(h):
    """Primos p con p² | h."""
    return [p for p in prime_sieve(math.isqrt(h)).tolist() if h % (p * p) == 0]


def mirsky_D(h, prime_cutoff=DEFAULT_PRIME_CUTOFF):
    """
    Correlación de los libres de cuadrados D(h) = D·∏_{p²|h} (1 + 1/(p²-2)).

    Args:
        h (int): desplazamiento, h ≥ 0
        prime_cutoff (int): corte del producto de Euler, ≥ 10³

    Returns:
        float: D(h); D(0) = 6/π² exactamente

    Raises:
        DomainError: si h < 0 o el corte es menor que 10³
    """
    if h < 0:
        raise DomainError("h debe ser no negativo", h=h)
    if prime_cutoff < 1000:
        raise DomainError("El corte de primos debe ser ≥ 10³", prime_cutoff=prime_cutoff)
    if h == 0:
        return SIX_OVER_PI2
    factor = 1.0
    for p in square_part_primes(h):
        factor *= 1.0 + 1.0 / (p * p - 2)
    return mirsky_product(prime_cutoff).value * factor


@lru_cache(maxsize=None)
def tm_sigma(h):
    """
    Correlación de Thue–Morse σ(h) como racional exacto.

    σ(0) = 1, σ(2h) = σ(h), σ(2h+1) = -½(σ(h) + σ(h+1)); en h = 0 la regla
    impar da σ(1) = -½(1 + σ(1)), es decir σ(1) = -1/3.
    """
    if h < 0:
        raise DomainError("h debe ser no negativo", h=h)
    if h == 0:
        return Fraction(1)
    if h == 1:
        return Fraction(-1, 3)
    k, odd = divmod(h, 2)
    if not odd:
        return tm_sigma(k)
    return -(tm_sigma(k) + tm_sigma(k + 1)) / 2


# ---------------------------------------------------------------------------
# Modelos espectrales
# ---------------------------------------------------------------------------

class SpectralKind(str, Enum):
    LEBESGUE = "lebesgue"
    SQFREE_ATOMS = "sqfree_atoms"
    TM_RIESZ = "tm_riesz"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class AtomFamily:
    """Átomos en j/d², j = 0..d²-1, cada uno de masa `mass`."""

    d: int
    mass: float

    @property
    def count(self):
        return self.d * self.d

    def count_in(self, a, b):
        """Átomos con posición en [a, b) (b - a ≤ 1, en vueltas)."""
        q = self.count
        return math.ceil(b * q) - math.ceil(a * q)


@dataclass(frozen=True)
class SpectralModel:
    """
    Medida espectral χ en el círculo (posiciones en vueltas).

    Los modelos atómicos guardan familias de átomos y calculan masa total,
    coeficientes de Fourier y masa de intervalos aritméticamente; los
    modelos con densidad integran la densidad.
    """

    kind: SpectralKind
    params: dict = field(default_factory=dict)
    families: tuple = ()
    density: object = field(default=None, compare=False, repr=False)
    coefficient: object = field(default=None, compare=False, repr=False)

    @property
    def is_atomic(self):
        return self.kind is SpectralKind.SQFREE_ATOMS

    def total_mass(self):
        if self.is_atomic:
            return math.fsum(f.count * f.mass for f in self.families)
        return self.fourier_coefficient(0)

    def fourier_coefficient(self, h):
        """χ̂(h) = ∫ e(-ht) dχ(t)."""
        if self.is_atomic:
            return math.fsum(f.count * f.mass for f in self.families if h % f.count == 0)
        if self.kind is SpectralKind.LEBESGUE:
            return 1.0 if h == 0 else 0.0
        return self.coefficient(h)

    def interval_mass(self, a, b):
        """χ([a, b)) con 0 ≤ b - a ≤ 1."""
        if not 0 <= b - a <= 1:
            raise DomainError("Se requiere 0 ≤ b - a ≤ 1", a=a, b=b)
        if self.is_atomic:
            return math.fsum(f.count_in(a, b) * f.mass for f in self.families)
        if self.kind is SpectralKind.LEBESGUE:
            return b - a
        return _integrate_density(self.density, a, b, self.params.get("resolution", 1))

    def atoms(self):
        """
        Átomos explícitos (posición, masa), fusionando posiciones coincidentes.

        Raises:
            CapacityError: si el número de átomos a materializar es excesivo
        """
        if not self.is_atomic:
            raise DomainError("El modelo no es atómico", kind=self.kind.value)
        total = sum(f.count for f in self.families)
        if total > MAX_MATERIALIZED_ATOMS:
            raise CapacityError("Demasiados átomos para materializar", atomos=total)
        merged = {}
        for fam in self.families:
            q = fam.count
            for j in range(q):
                pos = Fraction(j, q)
                merged[pos] = merged.get(pos, 0.0) + fam.mass
        return sorted(merged.items())

    def to_dict(self, include_atoms=True):
        data = {"kind": self.kind.value, "params": dict(self.params)}
        data["params"].pop("resolution", None)
        if self.is_atomic:
            data["total_mass"] = self.total_mass()
            if include_atoms:
                data["atoms"] = [
                    {"pos_turns": float(pos), "mass": mass} for pos, mass in self.atoms()
                ]
        return data


def _integrate_density(density, a, b, resolution):
    """Gauss–Legendre compuesto con paneles de ancho ≤ 1/(4·resolution)."""
    if b == a:
        return 0.0
    panels = max(1, math.ceil((b - a) * 4 * resolution))
    nodes, weights = leggauss(16)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return math.fsum(w * np.asarray(density(t), dtype=float))


def lebesgue_model():
    return SpectralModel(SpectralKind.LEBESGUE, density=lambda t: np.ones_like(np.asarray(t, float)))


def sqfree_atoms(d_max, prime_cutoff=DEFAULT_PRIME_CUTOFF):
    """
    Medida espectral de μ² truncada a d ≤ d_max.

    Para cada d libre de cuadrados hay átomos en j/d², j = 0..d²-1, de
    masa D/d²·∏_{p|d} 1/(p²-2). La masa total tiende a 6/π².
    """
    if d_max < 1:
        raise DomainError("d_max debe ser ≥ 1", d_max=d_max)
    D = mirsky_product(prime_cutoff).value
    primes = prime_sieve(d_max).tolist()
    mask = squarefree_mask(0, d_max + 1)
    families = []
    for d in range(1, d_max + 1):
        if not mask[d]:
            continue
        factor = 1.0
        for p in primes:
            if p > d:
                break
            if d % p == 0:
                factor /= p * p - 2
        families.append(AtomFamily(d=d, mass=D * factor / (d * d)))
    return SpectralModel(
        SpectralKind.SQFREE_ATOMS,
        params={"d_max": d_max, "prime_cutoff": prime_cutoff},
        families=tuple(families),
    )


def tm_riesz_density(t, depth):
    """
    Producto de Riesz ∏_{0≤j<n} 2 sin²(2^j π t).

    El ángulo 2^j t se reduce módulo 1 por duplicación exacta.
    """
    if depth < 1:
        raise DomainError("depth debe ser ≥ 1", depth=depth)
    scalar = np.ndim(t) == 0
    x = np.mod(np.asarray(t, dtype=float), 1.0)
    out = np.ones_like(x)
    for _ in range(depth):
        out = out * (2.0 * np.sin(np.pi * x) ** 2)
        x = np.mod(2.0 * x, 1.0)
    return float(out) if scalar else out


def tm_riesz_model(depth):
    N = 2**depth
    seq = generate(MultiplierKind.THUE_MORSE, 0, N)
    values = seq.values.real

    def coefficient(h):
        h = abs(int(h))
        if h >= N:
            return 0.0
        return math.fsum(values[: N - h] * values[h:]) / N

    return SpectralModel(
        SpectralKind.TM_RIESZ,
        params={"depth": depth, "resolution": N},
        density=lambda t: tm_riesz_density(t, depth),
        coefficient=coefficient,
    )


def empirical_spectral_density(seq, N, t):
    """(1/N)|Σ_{0≤k<N} ξ(k) e(kt)|², escalar o arreglo de t."""
    if N < 1:
        raise DomainError("N debe ser ≥ 1", N=N)
    values = seq.window(0, N)
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    k = np.arange(N, dtype=float)
    out = np.empty(t.shape)
    for i, ti in enumerate(t):
        phases = np.mod(k * ti, 1.0)
        out[i] = abs(compensated_sum(values * e_turns(phases))) ** 2 / N
    return float(out[0]) if scalar else out


def empirical_model(seq, N):
    values = seq.window(0, N)

    def coefficient(h):
        h = abs(int(h))
        if h >= N:
            return 0.0
        return compensated_sum(values[h:] * np.conj(values[: N - h])).real / N

    return SpectralModel(
        SpectralKind.EMPIRICAL,
        params={"N": N, "kind": seq.label, "resolution": N},
        density=lambda t: empirical_spectral_density(seq, N, t),
        coefficient=coefficient,
    )


def tm_centered_interval(m, p):
    """Subintervalo central I' = [(p+¼)2^{-m}, (p+¾)2^{-m}] del diádico p-ésimo."""
    return (p + 0.25) * 2.0**-m, (p + 0.75) * 2.0**-m


@dataclass(frozen=True)
class DyadicBound:
    """Masa espectral de un intervalo [a, b) frente a su cota inferior."""

    m: int
    p: int
    a: float
    b: float
    mass: float
    bound: float

    @property
    def passed(self):
        return self.mass >= self.bound

    def as_row(self):
        return (self.m, self.p, self.a, self.b, self.mass, self.bound, self.passed)


def _dyadic_range(m_max):
    if m_max < 1:
        raise DomainError("m_max debe ser ≥ 1", m_max=m_max)
    for m in range(1, m_max + 1):
        for p in range(2**m):
            yield m, p


def sqfree_dyadic_bounds(model, m_max=8, c=0.05):
    """
    χ(I) ≥ c·|I|^{3/2} para cada diádico I = [p2^{-m}, (p+1)2^{-m}), 1 ≤ m ≤ m_max.

    Args:
        model: SpectralModel atómico de μ² (sqfree_atoms)
    """
    if not model.is_atomic:
        raise DomainError("Se requiere el modelo atómico de μ²", kind=model.kind.value)
    rows = []
    for m, p in _dyadic_range(m_max):
        a, b = p * 2.0**-m, (p + 1) * 2.0**-m
        rows.append(DyadicBound(m, p, a, b, model.interval_mass(a, b), c * (b - a) ** 1.5))
    return rows


def tm_dyadic_bounds(m_max=6, extra_depth=6, C=4.0):
    """
    χ_{2^n}(I') ≥ 2^{-m²-Cm} con n = m + extra_depth, sobre el subintervalo
    central I' de cada diádico de longitud 2^{-m}.
    """
    if extra_depth < 1:
        raise DomainError("extra_depth debe ser ≥ 1", extra_depth=extra_depth)
    rows = []
    models = {}
    for m, p in _dyadic_range(m_max):
        if m not in models:
            models[m] = tm_riesz_model(m + extra_depth)
        model = models[m]
        a, b = tm_centered_interval(m, p)
        rows.append(DyadicBound(m, p, a, b, model.interval_mass(a, b), 2.0 ** (-m * m - C * m)))
    return rows


def tm_fitted_constant(rows):
    """Menor C con el que todas las filas cumplen mass ≥ 2^{-m²-Cm}."""
    needed = [(-math.log2(row.mass) - row.m * row.m) / row.m for row in rows if row.mass > 0]
    if len(needed) < len(rows):
        return math.inf
    return max(needed)


# ---------------------------------------------------------------------------
# Hipótesis de correlación
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionCheck:
    lhs: float
    rhs: float
    ratio: float
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio, **self.detail}


def check_condition1(seq, weight, R, beta):
    """
    Σ_{ν≤k≤ν+½βσ} |ξ(k)|² frente a βσ.

    Returns:
        ConditionCheck: lhs, rhs = βσ y su cociente
    """
    nu, sigma = weight.nu_sigma(R)
    k0 = math.ceil(nu)
    k1 = math.floor(nu + 0.5 * beta * sigma)
    values = seq.window(k0, k1 + 1)
    lhs = math.fsum(np.abs(values) ** 2)
    rhs = beta * sigma
    return ConditionCheck(lhs, rhs, lhs / rhs, {"window": [k0, k1]})


def condition2_window(weight, R, beta):
    """(M1, M2) = (ν(R) - βσ, ν(R(1+β)) + βσ), redondeados hacia afuera."""
    nu, sigma = weight.nu_sigma(R)
    nu_hi, _ = weight.nu_sigma(R * (1 + beta))
    return max(0, math.floor(nu - beta * sigma)), math.ceil(nu_hi + beta * sigma)


def condition2_cutoff(weight, R, beta, q=1.1, A=6.0):
    """h_cut = min(β^{-q}, A√(σ log σ))."""
    _, sigma = weight.nu_sigma(R)
    return max(1, math.floor(min(beta**-q, A * math.sqrt(sigma * math.log(sigma)))))


def check_condition2(seq, weight, R, beta, p, q=1.1, A=6.0):
    """
    Σ_{1≤h≤h_cut} (1+βh)^{-p}·S*(M1, M2; h) frente a βσ.

    La cola h > h_cut se acota con S* ≤ M2 - M1 + 1 y se informa aparte.

    Raises:
        DomainError: si p ≤ 1
        RangeError: si el buffer no cubre [M1, M2 + h_cut]
    """
    if not p > 1:
        raise DomainError("La condición 2 requiere p > 1", p=p)
    _, sigma = weight.nu_sigma(R)
    M1, M2 = condition2_window(weight, R, beta)
    h_cut = condition2_cutoff(weight, R, beta, q, A)
    h = np.arange(1, h_cut + 1, dtype=float)
    profile = s_star_profile(seq, M1, M2, h_cut)
    lhs = math.fsum((1 + beta * h) ** -p * profile)
    rhs = beta * sigma
    length = M2 - M1 + 1
    tail = length * (1 + beta * h_cut) ** (1 - p) / (beta * (p - 1))
    return ConditionCheck(
        lhs, rhs, lhs / rhs, {"M1": M1, "M2": M2, "h_cut": h_cut, "tail_bound": tail}
    )


def diophantine_sum(alpha, beta, p, H, alpha_lo=0.0):
    """
    Majorante Σ_{1≤h≤H} (1+βh)^{-p}·2/|1 - e(-2αh)| de la condición 2
    para la fase cuadrática; ‖2αh‖ se reduce en doble-doble.
    """
    h = np.arange(1, H + 1, dtype=float)
    prod, err = two_prod(2.0 * alpha, h)
    hi, lo = reduce_mod1(prod, err + 2.0 * alpha_lo * h)
    frac = hi + lo
    dist = np.minimum(frac, 1.0 - frac)
    if np.any(dist == 0):
        raise DomainError("2αh es entero para algún h ≤ H; α no es irracional", H=H)
    chord = 2.0 * np.sin(np.pi * dist)
    return math.fsum((1 + beta * h) ** -p * 2.0 / chord)


@dataclass(frozen=True)
class ConditionItem:
    name: str
    lhs: float
    rhs: float
    passed: bool

    @property
    def margin(self):
        return self.rhs / self.lhs if self.lhs > 0 else math.inf

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "passed": self.passed,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class NoGapReport:
    items: tuple
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(item.passed for item in self.items)

    def __getitem__(self, name):
        for item in self.items:
            if item.name == name:
                return item
        raise KeyError(name)

    def to_dict(self):
        return {"passed": self.passed, "items": [i.to_dict() for i in self.items], **self.detail}


def mirsky_eps1(eps=0.01):
    """ε1(X; h) = X^{-1/3+ε} para los libres de cuadrados."""
    return lambda X, h: X ** (-1.0 / 3.0 + eps)


def tm_eps1(X, h):
    """ε1(X; h) = h log X / X para Thue–Morse."""
    return max(h, 1) * math.log(X) / X


def sqfree_eps2(beta):
    return beta**1.5


def tm_eps2(c0=1.0):
    return lambda beta: math.exp(-c0 * math.log(beta) ** 2)


def check_no_gap_conditions(seq, weight, R, beta, q, eps1, eps2, g=None, H=None, K=1.0):
    """
    Evalúa las condiciones (a)–(d) que garantizan la ausencia de huecos entre ceros.

    (a) β^{-q} ≤ min{√σ, H(ν/2)}
    (b) β^{-(1+2q)} ≪ σ·ε2(β)
    (c) ν Σ_{0≤h≤β^{-q}} ε1(ν/2; h) ≪ βσ·ε2(β)
    (d) Σ_{h>β^{-q}} |ĝ(βh)| ≪ ε2(β)

    "≪" se lee como lhs ≤ K·rhs. La secuencia solo identifica el informe;
    las condiciones dependen de los modelos ε1, ε2 y del peso.

    Args:
        H: alcance H(X) del modelo ε1; por defecto H(X) = X
        K (float): constante de las desigualdades "≪"
    """
    if not 0 < beta < 1:
        raise DomainError("β debe estar en (0, 1)", beta=beta)
    if not q > 1:
        raise DomainError("q debe ser > 1", q=q)
    g = g or DEFAULT_BUMP
    H = H or (lambda X: X)
    nu, sigma = weight.nu_sigma(R)
    e2 = eps2(beta)
    h_top = math.floor(beta**-q)

    a_lhs = beta**-q
    a_rhs = min(math.sqrt(sigma), H(nu / 2))
    b_lhs = beta ** -(1 + 2 * q)
    b_rhs = sigma * e2
    c_lhs = nu * math.fsum(eps1(nu / 2, h) for h in range(0, h_top + 1))
    c_rhs = beta * sigma * e2
    d_lhs, terms = g.fourier_tail(beta, h_top + 1)
    d_rhs = e2

    items = (
        ConditionItem("a", a_lhs, a_rhs, a_lhs <= a_rhs),
        ConditionItem("b", b_lhs, b_rhs, b_lhs <= K * b_rhs),
        ConditionItem("c", c_lhs, c_rhs, c_lhs <= K * c_rhs),
        ConditionItem("d", d_lhs, d_rhs, d_lhs <= K * d_rhs),
    )
    detail = {
        "nu": nu,
        "sigma": sigma,
        "beta": beta,
        "q": q,
        "K": K,
        "d_terms": terms,
        "sequence": seq.label if seq is not None else None,
    }
    return NoGapReport(items, detail)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

MIN_CHOWLA_TRIALS = 50
MIN_ANTICONCENTRATION_TRIALS = 1000


@dataclass(frozen=True)
class ChowlaMoment:
    mean_sq: float
    bound: float
    trials: int
    std_error: float
    low_confidence: bool
    diagonal: bool

    def to_dict(self):
        return {
            "mean_sq": self.mean_sq,
            "bound": self.bound,
            "trials": self.trials,
            "std_error": self.std_error,
            "low_confidence": self.low_confidence,
            "diagonal": self.diagonal,
        }


def chowla_moment_mc(kind, x, eta, h, trials, seed, a=0.5, b=0.1, base="steinhaus", executor=None):
    """
    Momento E|Σ_{x≤k<(1+η)x} ξ(k)·conj ξ(k+h)|² por Monte Carlo.

    Args:
        kind: rand_mult o rand_compl_mult
        a (float): exponente declarado del régimen h ≲ ηx^{1-a}, x^{a-1} ≤ η ≤ 1
        b (float): exponente de la cota ηx^{1+b}
        executor: ejecutor opcional (concurrent.futures) para repartir ensayos

    Raises:
        PreconditionError: si los parámetros salen del régimen declarado
    """
    multiplier = Multiplier(MultiplierKind(kind), base=base)
    if not multiplier.kind.is_multiplicative:
        raise DomainError("El momento de Chowla aleatorio requiere rand_mult o rand_compl_mult")
    if trials < 1:
        raise PreconditionError("Se requiere al menos un ensayo", trials=trials)
    if not 0 < a < 1:
        raise PreconditionError("a debe estar en (0, 1)", a=a)
    if not x ** (a - 1) <= eta <= 1:
        raise PreconditionError("η fuera de [x^{a-1}, 1]", eta=eta, x=x, a=a)
    if h < 0 or h > eta * x ** (1 - a):
        raise PreconditionError("h fuera de [0, ηx^{1-a}]", h=h, limite=eta * x ** (1 - a))
    k0 = int(x)
    k1 = math.ceil((1 + eta) * x)

    def one_trial(trial):
        seq = generate(multiplier, k0, k1 + h, derive_seed(seed, trial))
        values = seq.values
        n = k1 - k0
        s = compensated_sum(values[:n] * np.conj(values[h : h + n]))
        return abs(s) ** 2

    runner = executor.map if executor is not None else map
    samples = np.fromiter(runner(one_trial, range(trials)), dtype=float, count=trials)
    mean = float(np.mean(samples))
    std_error = float(np.std(samples, ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    low = trials < MIN_CHOWLA_TRIALS
    if low:
        logger.warning("Momento de Chowla con %s ensayo(s): resultado de baja confianza", trials)
    return ChowlaMoment(
        mean_sq=mean,
        bound=eta * x ** (1 + b),
        trials=trials,
        std_error=std_error,
        low_confidence=low,
        diagonal=h == 0,
    )


IID_KINDS = (
    MultiplierKind.IID_GAUSSIAN,
    MultiplierKind.IID_RADEMACHER,
    MultiplierKind.IID_STEINHAUS,
)


def anticoncentration_mc(kind, n, theta, eps, Z_grid, trials, seed, coefficients=None):
    """
    max_{Z} P[|S(θ) - Z| < ε] con S(θ) = Σ_{k<n} ξ(k)c_k e(kθ).

    Los ensayos usan índices disjuntos del mismo flujo iid: el ensayo t toma
    ξ sobre [t·n, (t+1)·n), así que todos son independientes y reproducibles.

    Raises:
        DomainError: si la malla de Z está vacía o la familia no es iid
        PreconditionError: si hay menos de 10³ ensayos
    """
    kind = MultiplierKind(kind)
    if kind not in IID_KINDS:
        raise DomainError("La anticoncentración requiere una familia iid", kind=kind.value)
    Z = np.asarray(list(Z_grid), dtype=np.complex128)
    if Z.size == 0:
        raise DomainError("La malla de Z está vacía")
    if trials < MIN_ANTICONCENTRATION_TRIALS:
        raise PreconditionError("Se requieren al menos 10³ ensayos", trials=trials)
    if n < 1:
        raise DomainError("n debe ser ≥ 1", n=n)
    c = np.ones(n) if coefficients is None else np.asarray(coefficients, dtype=np.complex128)
    if c.shape != (n,):
        raise DomainError("Se requieren n coeficientes", n=n)
    phase = c * e_turns(np.mod(np.arange(n, dtype=float) * theta, 1.0))

    hits = np.zeros(Z.size, dtype=np.int64)
    chunk = max(1, 2**20 // n)
    for start in range(0, trials, chunk):
        stop = min(trials, start + chunk)
        seq = generate(kind, start * n, stop * n, seed)
        S = seq.values.reshape(stop - start, n) @ phase
        hits += np.sum(np.abs(S[:, None] - Z[None, :]) < eps, axis=0)
    return float(hits.max()) / trials
