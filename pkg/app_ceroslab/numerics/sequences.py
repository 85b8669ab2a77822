# app_ceroslab/numerics/sequences.py
"""
Secuencias de multiplicadores ξ como buffers inmutables sobre rangos [n0, n1).

Las familias aleatorias se generan por hashing de (semilla, índice): cualquier
subrango se puede regenerar de forma idéntica sin estado global.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .arithmetic import (
    dd_from_string,
    e_turns,
    hash64,
    prime_sieve,
    quadratic_phase_turns,
    squarefree_mask,
    uniform01,
)
from .errors import CapacityError, DomainError, RangeError

logger = logging.getLogger(__name__)

MAX_BUFFER_LENGTH = 2**31

# flujos independientes del hash para cada uso aleatorio
_STREAM_IID = 1
_STREAM_IID_ANGLE = 2
_STREAM_PRIME = 3


class MultiplierKind(str, Enum):
    IID_GAUSSIAN = "iid_gaussian"
    IID_RADEMACHER = "iid_rademacher"
    IID_STEINHAUS = "iid_steinhaus"
    QUADRATIC = "quadratic"
    RAND_MULT = "rand_mult"
    RAND_COMPL_MULT = "rand_compl_mult"
    GRS = "grs"
    SQUAREFREE = "squarefree"
    THUE_MORSE = "thue_morse"
    CONSTANT = "constant"

    @property
    def is_random(self):
        return self in _RANDOM_KINDS

    @property
    def is_multiplicative(self):
        return self in (MultiplierKind.RAND_MULT, MultiplierKind.RAND_COMPL_MULT)


_RANDOM_KINDS = frozenset(
    {
        MultiplierKind.IID_GAUSSIAN,
        MultiplierKind.IID_RADEMACHER,
        MultiplierKind.IID_STEINHAUS,
        MultiplierKind.RAND_MULT,
        MultiplierKind.RAND_COMPL_MULT,
    }
)

PRIME_BASES = ("rademacher", "steinhaus")


@dataclass(frozen=True)
class Multiplier:
    """
    Familia ξ con sus parámetros.

    - quadratic: α guardado como par doble-doble (alpha, alpha_lo)
    - rand_mult / rand_compl_mult: distribución base de X_p en {rademacher, steinhaus}
    """

    kind: MultiplierKind
    alpha: float = None
    alpha_lo: float = 0.0
    base: str = "steinhaus"

    def __post_init__(self):
        kind = MultiplierKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is MultiplierKind.QUADRATIC:
            if self.alpha is None or not math.isfinite(self.alpha):
                raise DomainError("quadratic requiere un α finito")
        if kind.is_multiplicative and self.base not in PRIME_BASES:
            raise DomainError(
                "La distribución base de X_p debe ser rademacher o steinhaus", base=self.base
            )

    @classmethod
    def quadratic(cls, alpha):
        """
        Familia cuadrática e(α n²).

        Args:
            alpha: float, cadena decimal (se convierte a doble-doble) o par (hi, lo)
        """
        hi, lo = _alpha_pair(alpha)
        return cls(MultiplierKind.QUADRATIC, alpha=hi, alpha_lo=lo)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Multiplier):
            return value
        if isinstance(value, dict):
            return cls.from_dict(value)
        return cls(MultiplierKind(value))

    def to_dict(self):
        data = {"kind": self.kind.value}
        if self.kind is MultiplierKind.QUADRATIC:
            data.update(alpha=self.alpha, alpha_lo=self.alpha_lo)
        if self.kind.is_multiplicative:
            data["base"] = self.base
        return data

    @classmethod
    def from_dict(cls, data):
        kind = MultiplierKind(data["kind"])
        if kind is MultiplierKind.QUADRATIC:
            if "alpha_lo" in data:
                return cls(kind, alpha=float(data["alpha"]), alpha_lo=float(data["alpha_lo"]))
            return cls.quadratic(data["alpha"])
        return cls(kind, base=data.get("base", "steinhaus"))


def _alpha_pair(alpha):
    if isinstance(alpha, str):
        return dd_from_string(alpha)
    if isinstance(alpha, (tuple, list)):
        return float(alpha[0]), float(alpha[1])
    return float(alpha), 0.0


@dataclass(frozen=True)
class SequenceBuffer:
    """Valores ξ(n) para n en [n0, n1); el arreglo es de solo lectura."""

    multiplier: Multiplier  # None para buffers explícitos
    n0: int
    n1: int
    values: np.ndarray = field(repr=False)
    seed: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.n1 - self.n0,):
            raise DomainError("El arreglo no coincide con el rango", n0=self.n0, n1=self.n1)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def explicit(cls, values, n0=0):
        """Buffer con valores dados a mano (sin familia asociada)."""
        values = np.asarray(values, dtype=np.complex128)
        return cls(None, n0, n0 + values.size, values)

    @property
    def kind(self):
        return self.multiplier.kind if self.multiplier is not None else None

    @property
    def label(self):
        return self.kind.value if self.kind is not None else "explicit"

    def __len__(self):
        return self.n1 - self.n0

    def covers(self, a, b):
        """True si el buffer contiene todos los índices de [a, b)."""
        return self.n0 <= a and b <= self.n1

    def window(self, a, b):
        """
        Vista de ξ sobre [a, b).

        Raises:
            RangeError: si el buffer no cubre el rango
        """
        if b < a:
            raise DomainError("Rango vacío invertido", a=a, b=b)
        if not self.covers(a, b):
            raise RangeError(
                "El buffer no cubre los índices requeridos",
                requerido=[a, b],
                disponible=[self.n0, self.n1],
            )
        return self.values[a - self.n0 : b - self.n0]

    def __getitem__(self, n):
        return complex(self.window(n, n + 1)[0])


def generate(kind, n0, n1, seed=0):
    """
    Genera ξ sobre [n0, n1).

    Args:
        kind: MultiplierKind, nombre de la familia o Multiplier con parámetros
        n0 (int): índice inicial, no negativo
        n1 (int): índice final (exclusivo), n1 > n0
        seed (int): semilla de 64 bits; las familias deterministas la ignoran

    Returns:
        SequenceBuffer

    Raises:
        DomainError: si el rango es inválido
        CapacityError: si n1 - n0 > 2^31
    """
    multiplier = Multiplier.coerce(kind)
    n0, n1 = int(n0), int(n1)
    if n0 < 0 or n1 <= n0:
        raise DomainError("Se requiere 0 ≤ n0 < n1", n0=n0, n1=n1)
    if n1 - n0 > MAX_BUFFER_LENGTH:
        raise CapacityError(
            "Rango demasiado largo para un buffer", required_max_index=n1, longitud=n1 - n0
        )
    seed = int(seed) if multiplier.kind.is_random else 0
    generator = _GENERATORS[multiplier.kind]
    values = generator(multiplier, n0, n1, seed)
    logger.debug("Secuencia %s generada en [%s, %s)", multiplier.kind.value, n0, n1)
    return SequenceBuffer(multiplier, n0, n1, values, seed)


# ---------------------------------------------------------------------------
# Generadores por familia
# ---------------------------------------------------------------------------

def _constant(multiplier, n0, n1, seed):
    return np.ones(n1 - n0, dtype=np.complex128)


def _iid_gaussian(multiplier, n0, n1, seed):
    idx = np.arange(n0, n1, dtype=np.int64)
    u1 = 1.0 - uniform01(hash64(seed, idx, _STREAM_IID))
    u2 = uniform01(hash64(seed, idx, _STREAM_IID_ANGLE))
    # normal compleja estándar: |Z|² ~ Exp(1), partes real e imaginaria de varianza ½
    return np.sqrt(-np.log(u1)) * e_turns(u2)


def _iid_rademacher(multiplier, n0, n1, seed):
    bits = hash64(seed, np.arange(n0, n1, dtype=np.int64), _STREAM_IID)
    signs = 1.0 - 2.0 * (bits >> np.uint64(63)).astype(np.float64)
    return signs.astype(np.complex128)


def _iid_steinhaus(multiplier, n0, n1, seed):
    bits = hash64(seed, np.arange(n0, n1, dtype=np.int64), _STREAM_IID)
    return e_turns(uniform01(bits))


def _quadratic(multiplier, n0, n1, seed):
    phases = quadratic_phase_turns(
        multiplier.alpha, multiplier.alpha_lo, np.arange(n0, n1, dtype=np.int64)
    )
    return e_turns(phases)


def prime_values(multiplier, primes, seed):
    """X_p = f(hash64(seed, p)) con f según la distribución base."""
    bits = hash64(seed, np.asarray(primes, dtype=np.int64), _STREAM_PRIME)
    if multiplier.base == "rademacher":
        return (1.0 - 2.0 * (bits >> np.uint64(63)).astype(np.float64)).astype(np.complex128)
    return e_turns(uniform01(bits))


def _first_multiple(n0, q):
    return -(-n0 // q) * q


def _rand_mult(multiplier, n0, n1, seed):
    values = np.ones(n1 - n0, dtype=np.complex128)
    primes = prime_sieve(n1 - 1)
    xs = prime_values(multiplier, primes, seed)
    for p, xp in zip(primes.tolist(), xs):
        start = _first_multiple(n0, p)
        if start < n1:
            values[start - n0 :: p] *= xp
        q = p * p
        if q < n1:
            start = _first_multiple(n0, q)
            values[start - n0 :: q] = 0
    if n0 == 0:
        values[0] = 0
    return values


def _rand_compl_mult(multiplier, n0, n1, seed):
    values = np.ones(n1 - n0, dtype=np.complex128)
    primes = prime_sieve(n1 - 1)
    xs = prime_values(multiplier, primes, seed)
    for p, xp in zip(primes.tolist(), xs):
        q = p
        # cada potencia p^m que divide a n aporta un factor X_p
        while q < n1:
            start = _first_multiple(n0, q)
            if start < n1:
                values[start - n0 :: q] *= xp
            q *= p
    if n0 == 0:
        values[0] = 0
    return values


def _grs(multiplier, n0, n1, seed):
    n = np.arange(n0, n1, dtype=np.uint64)
    pairs = np.bitwise_count(n & (n >> np.uint64(1)))
    return (1.0 - 2.0 * (pairs & 1)).astype(np.complex128)


def _thue_morse(multiplier, n0, n1, seed):
    ones = np.bitwise_count(np.arange(n0, n1, dtype=np.uint64))
    return (1.0 - 2.0 * (ones & 1)).astype(np.complex128)


def _squarefree(multiplier, n0, n1, seed):
    return squarefree_mask(n0, n1).astype(np.complex128)


_GENERATORS = {
    MultiplierKind.CONSTANT: _constant,
    MultiplierKind.IID_GAUSSIAN: _iid_gaussian,
    MultiplierKind.IID_RADEMACHER: _iid_rademacher,
    MultiplierKind.IID_STEINHAUS: _iid_steinhaus,
    MultiplierKind.QUADRATIC: _quadratic,
    MultiplierKind.RAND_MULT: _rand_mult,
    MultiplierKind.RAND_COMPL_MULT: _rand_compl_mult,
    MultiplierKind.GRS: _grs,
    MultiplierKind.SQUAREFREE: _squarefree,
    MultiplierKind.THUE_MORSE: _thue_morse,
}


# ---------------------------------------------------------------------------
# Valores puntuales
# ---------------------------------------------------------------------------

def grs_value(n):
    """Golay–Rudin–Shapiro: (-1)^{número de pares "11" en binario}."""
    if n < 0:
        raise DomainError("n debe ser no negativo", n=n)
    return -1 if (n & (n >> 1)).bit_count() & 1 else 1


def tm_value(n):
    """Thue–Morse: (-1)^{número de unos en binario}."""
    if n < 0:
        raise DomainError("n debe ser no negativo", n=n)
    return -1 if n.bit_count() & 1 else 1


def sqfree_value(n):
    """μ²(n) por división de prueba entre cuadrados de primos ≤ √n."""
    if n < 1:
        raise DomainError("sqfree_value requiere n ≥ 1", n=n)
    for p in prime_sieve(math.isqrt(n)).tolist():
        if n % (p * p) == 0:
            return 0
    return 1


def quad_phase(alpha, n):
    """
    e(α n²) con frac(α n²) calculado en doble-doble.

    Args:
        alpha: float, cadena decimal o par (hi, lo)
        n (int): índice no negativo

    Returns:
        complex: valor de módulo 1
    """
    hi, lo = _alpha_pair(alpha)
    t = quadratic_phase_turns(hi, lo, np.array([n], dtype=np.int64))
    return complex(e_turns(t)[0])
