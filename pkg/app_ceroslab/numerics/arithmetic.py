# app_ceroslab/numerics/arithmetic.py
"""
Aritmética auxiliar: sumas compensadas, doble-doble, cribas y hashing.

Las rutinas doble-doble siguen el esquema clásico de Dekker/Knuth
(`two_sum`, `two_prod` por división de mantisa) y operan sobre arreglos
de numpy elemento a elemento.
"""
import math
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainError

MASK64 = (1 << 64) - 1
_SPLITTER = 134217729.0  # 2^27 + 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_STREAM = np.uint64(0xD1B54A32D192ED03)

# n² debe caber exactamente en int64
MAX_QUADRATIC_INDEX = 3_037_000_499


# ---------------------------------------------------------------------------
# Sumas compensadas
# ---------------------------------------------------------------------------

def compensated_sum(values):
    """
    Suma correctamente redondeada de un arreglo real o complejo.

    Args:
        values: arreglo unidimensional (real o complejo)

    Returns:
        float o complex: la suma, parte real e imaginaria vía `math.fsum`
    """
    values = np.asarray(values).ravel()
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def neumaier_sum(terms, axis=0):
    """
    Suma de Kahan–Babuška (Neumaier) a lo largo de un eje.

    Se usa cuando hay que sumar muchas columnas a la vez (evaluación
    vectorizada en muchos puntos), donde `math.fsum` sería demasiado lento.
    """
    terms = np.moveaxis(np.asarray(terms), axis, 0)
    if np.iscomplexobj(terms):
        return neumaier_sum(terms.real) + 1j * neumaier_sum(terms.imag)
    if terms.shape[0] == 0:
        return np.zeros(terms.shape[1:], dtype=terms.dtype)
    total = terms[0].astype(np.float64)
    correction = np.zeros_like(total)
    for row in terms[1:]:
        t = total + row
        big = np.abs(total) >= np.abs(row)
        correction += np.where(big, (total - t) + row, (row - t) + total)
        total = t
    return total + correction


def compensated_cumsum(values):
    """
    Sumas prefijas con corrección de errores de redondeo.

    `np.cumsum` acumula en orden, así que el error de cada paso se recupera
    exactamente con `two_sum` y las correcciones se vuelven a acumular.
    """
    values = np.asarray(values).ravel()
    if np.iscomplexobj(values):
        return compensated_cumsum(values.real) + 1j * compensated_cumsum(values.imag)
    values = values.astype(np.float64)
    if values.size == 0:
        return values
    partial = np.cumsum(values)
    previous = np.concatenate(([0.0], partial[:-1]))
    _, err = two_sum(previous, values)
    return partial + np.cumsum(err)


# ---------------------------------------------------------------------------
# Doble-doble
# ---------------------------------------------------------------------------

def two_sum(a, b):
    """Suma exacta: devuelve (s, err) con s + err == a + b."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def split(a):
    """División de Dekker en dos mitades de 26 bits."""
    c = _SPLITTER * a
    abig = c - a
    hi = c - abig
    return hi, a - hi


def two_prod(a, b):
    """Producto exacto: devuelve (p, err) con p + err == a * b."""
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def reduce_mod1(hi, lo):
    """Reduce el número doble-doble hi + lo módulo 1, devolviendo otro par."""
    hi = hi - np.floor(hi)
    s, e = two_sum(hi, lo)
    k = np.floor(s)
    s, e2 = two_sum(s, -k)
    return two_sum(s, e + e2)


def dd_from_string(text):
    """
    Convierte un decimal de alta precisión en un par doble-doble.

    Args:
        text (str): número decimal, por ejemplo los primeros 50 dígitos de √2

    Returns:
        tuple: (hi, lo) con hi + lo igual al valor a ~106 bits
    """
    with mpmath.workprec(200):
        x = mpmath.mpf(text)
        hi = float(x)
        lo = float(x - hi)
    return hi, lo


def quadratic_phase_turns(alpha_hi, alpha_lo, n):
    """
    Calcula frac(α n²) en vueltas con precisión doble-doble.

    n² se forma exacto en int64 y se parte como n² = N1·2^26 + N0, de modo
    que frac(α n²) = frac(frac(α·2^26)·N1 + α·N0) con productos exactos.

    Args:
        alpha_hi (float): parte alta de α
        alpha_lo (float): parte baja de α (0 si α es un double)
        n: índices enteros no negativos

    Returns:
        ndarray: fases en [0, 1)
    """
    n = np.asarray(n, dtype=np.int64)
    if n.size and (n.min() < 0 or n.max() > MAX_QUADRATIC_INDEX):
        raise DomainError(
            "Los índices de la fase cuadrática deben estar en [0, 3.03e9]",
            maximo=MAX_QUADRATIC_INDEX,
        )
    sq = n * n
    n1 = (sq >> 26).astype(np.float64)
    n0 = (sq & ((1 << 26) - 1)).astype(np.float64)

    a_hi, a_lo = reduce_mod1(alpha_hi * 2.0**26, alpha_lo * 2.0**26)

    p, e = two_prod(a_hi, n1)
    t1_hi, t1_lo = reduce_mod1(p, e + a_lo * n1)
    p, e = two_prod(alpha_hi, n0)
    t2_hi, t2_lo = reduce_mod1(p, e + alpha_lo * n0)

    s, e = two_sum(t1_hi, t2_hi)
    hi, lo = reduce_mod1(s, e + (t1_lo + t2_lo))
    t = hi + lo
    return t - np.floor(t)


def e_turns(t):
    """e(t) = exp(2πi t) con t en vueltas."""
    return np.exp(2j * np.pi * np.asarray(t, dtype=np.float64))


# ---------------------------------------------------------------------------
# Hashing reproducible (sin estado global)
# ---------------------------------------------------------------------------

def splitmix64(x):
    """Mezclador splitmix64 vectorizado sobre uint64."""
    with np.errstate(over="ignore"):
        z = np.asarray(x, dtype=np.uint64) + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def hash64(seed, index, stream=0):
    """
    Hash de 64 bits de (semilla, flujo, índice).

    Permite generar cualquier subrango de una secuencia aleatoria sin
    estado global: el valor en el índice n depende solo de (seed, n).
    """
    seed = np.uint64(int(seed) & MASK64)
    with np.errstate(over="ignore"):
        key = splitmix64(seed ^ (np.uint64(stream) * _STREAM))
        return splitmix64(key + np.asarray(index, dtype=np.int64).astype(np.uint64))


def uniform01(bits):
    """Uniformes en [0, 1) a partir de los 53 bits altos de un hash."""
    return (np.asarray(bits, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def derive_seed(seed, trial):
    """Semilla determinista del ensayo `trial` de un experimento Monte Carlo."""
    return int(hash64(seed, np.int64(trial), stream=0x7F4A))


# ---------------------------------------------------------------------------
# Cribas
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _prime_sieve_cached(limit):
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    primes = np.flatnonzero(mask).astype(np.int64)
    primes.setflags(write=False)
    return primes


def prime_sieve(limit):
    """Primos p ≤ limit (arreglo de solo lectura)."""
    limit = int(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return _prime_sieve_cached(limit)


def squarefree_mask(n0, n1):
    """
    Criba segmentada de libres de cuadrados en [n0, n1).

    El índice 0 se marca como no libre de cuadrados.
    """
    mask = np.ones(n1 - n0, dtype=bool)
    if n0 == 0 and n1 > 0:
        mask[0] = False
    if n1 <= 4:
        return mask
    for p in prime_sieve(math.isqrt(n1 - 1)):
        q = int(p) * int(p)
        start = -(-n0 // q) * q
        if start < n1:
            mask[start - n0 :: q] = False
    return mask
