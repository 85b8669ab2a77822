# app_ceroslab/numerics/bumps.py
"""
Funciones de prueba suaves de soporte compacto.

La clase admitida: g ≥ 0, C^∞, soporte en (-½, ½), ∫g = 1 y g = 1 en [-¼, ¼].
Como g vale 1 en la meseta y su integral es 1, la masa que falta en las
bandas de transición se completa con un bulto adicional en ¼ < |x| < ½.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate

from .errors import DomainError


def _smooth_step(u):
    """Escalón C^∞: 0 para u ≤ 0, 1 para u ≥ 1."""
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        f = np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)
        g = np.where(u < 1, np.exp(-1.0 / np.where(u < 1, 1.0 - u, 1.0)), 0.0)
    return f / (f + g)


def _bump(x, center, half_width):
    """Bulto estándar exp(-1/(1-y²)) centrado en `center`."""
    y = (np.asarray(x, dtype=float) - center) / half_width
    inside = np.abs(y) < 1
    out = np.zeros_like(y)
    out[inside] = np.exp(-1.0 / (1.0 - y[inside] ** 2))
    return out


@dataclass(frozen=True)
class PlateauBump:
    """
    Meseta 1 en [-¼, ¼] que cae a 0 en |x| = edge, más un bulto simétrico
    de relleno centrado en ±fill_center para que ∫g = 1.
    """

    edge: float = 0.49
    fill_center: float = 0.37
    fill_half_width: float = 0.11

    def __post_init__(self):
        if not 0.25 < self.edge < 0.5:
            raise DomainError("El borde de la meseta debe estar en (¼, ½)", edge=self.edge)
        lo = self.fill_center - self.fill_half_width
        hi = self.fill_center + self.fill_half_width
        if not (0.25 <= lo and hi < 0.5):
            raise DomainError("El bulto de relleno debe quedar dentro de ¼ ≤ |x| < ½")

    def _plateau(self, x):
        ax = np.abs(np.asarray(x, dtype=float))
        return 1.0 - _smooth_step((ax - 0.25) / (self.edge - 0.25))

    def _fill(self, x):
        ax = np.abs(np.asarray(x, dtype=float))
        return _bump(ax, self.fill_center, self.fill_half_width)

    @cached_property
    def fill_weight(self):
        # ∫ de la meseta = ½ + (edge - ¼) por la simetría del escalón
        missing = 1.0 - (0.5 + (self.edge - 0.25))
        fill_mass, _ = integrate.quad(lambda t: float(self._fill(t)), -0.5, 0.5, limit=200)
        return missing / fill_mass

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        out = self._plateau(x) + self.fill_weight * self._fill(x)
        return float(out) if scalar else out

    def fourier(self, lam):
        """
        ĝ(λ) = ∫ g(x) e(-λx) dx; g es par, así que ĝ es real.

        Se calcula con la regla de QUADPACK para pesos cosenoidales.
        """
        lam = float(lam)
        if lam == 0:
            return 1.0
        value, _ = integrate.quad(
            lambda t: float(self(t)), -0.5, 0.5, weight="cos", wvar=2.0 * math.pi * lam, limit=200
        )
        return value

    @cached_property
    def _nodes(self):
        # Gauss–Legendre compuesto: 64 paneles × 32 nodos sobre [-½, ½]
        nodes, weights = np.polynomial.legendre.leggauss(32)
        edges = np.linspace(-0.5, 0.5, 65)
        half = 0.5 * np.diff(edges)
        mid = edges[:-1] + half
        x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        w = (half[:, None] * weights[None, :]).ravel()
        return x, w * self(x)

    def fourier_many(self, lam, chunk=2048):
        """
        ĝ en muchos λ a la vez, para |λ| ≤ 64 aproximadamente.

        Cada panel ve a lo sumo una oscilación, así que la regla fija basta.
        """
        x, gw = self._nodes
        flat = np.asarray(lam, dtype=float).ravel()
        out = np.empty(flat.size)
        for start in range(0, flat.size, chunk):
            block = flat[start : start + chunk]
            out[start : start + chunk] = np.cos(2.0 * math.pi * block[:, None] * x[None, :]) @ gw
        return out.reshape(np.shape(lam))

    def fourier_tail(self, beta, h_from, lam_max=64.0, max_terms=200_000):
        """
        Σ_{h ≥ h_from} |ĝ(βh)|, truncada en βh ≤ lam_max.

        Returns:
            tuple: (suma, número de términos)
        """
        h_to = min(int(math.floor(lam_max / beta)), h_from + max_terms)
        if h_to < h_from:
            return 0.0, 0
        values = np.abs(self.fourier_many(beta * np.arange(h_from, h_to + 1)))
        return math.fsum(values.tolist()), int(values.size)


DEFAULT_BUMP = PlateauBump()
