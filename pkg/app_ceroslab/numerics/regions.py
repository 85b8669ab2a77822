# app_ceroslab/numerics/regions.py
"""
Regiones del plano compartidas por weights, zeros y equidist.

Los ángulos se miden en vueltas: θ ∈ [0, 1) corresponde a e(θ) = e^{2πiθ}.
"""
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Disk:
    """Disco cerrado D(center, r) = {w : |w - center| ≤ r}."""

    r: float
    center: complex = 0j

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise DomainError("El radio del disco debe ser positivo", r=self.r)
        object.__setattr__(self, "center", complex(self.center))

    @property
    def is_centered(self):
        return self.center == 0

    @property
    def is_degenerate(self):
        return False

    @property
    def diameter(self):
        return 2.0 * self.r

    @property
    def midpoint(self):
        return self.center

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) <= self.r

    def scaled(self, factor):
        """Mismo centro, radio multiplicado por `factor`."""
        return Disk(self.r * factor, self.center)

    def label(self):
        return f"disk(c={self.center.real:.6g}{self.center.imag:+.6g}j, r={self.r:.6g})"

    def to_dict(self):
        return {
            "kind": "disk",
            "r": self.r,
            "center": [self.center.real, self.center.imag],
        }



@dataclass(frozen=True)
class AnnulusSector:
    """
    Sector anular {c + r e(θ) : r1 ≤ r ≤ r2, θ1 ≤ θ ≤ θ2} con ángulos en vueltas.

    Un lapso θ2 - θ1 = 1 representa el anillo completo. El centro c es 0
    salvo en las celdas de localización dentro de discos descentrados.
    """

    r1: float
    r2: float
    theta1: float = 0.0
    theta2: float = 1.0
    center: complex = 0j

    def __post_init__(self):
        if not (0 <= self.r1 < self.r2):
            raise DomainError("Se requiere 0 ≤ r1 < r2", r1=self.r1, r2=self.r2)
        span = self.theta2 - self.theta1
        if span < 0 or span > 1 + 1e-12:
            raise DomainError(
                "Se requiere θ1 ≤ θ2 ≤ θ1 + 1 (ángulos en vueltas)",
                theta1=self.theta1,
                theta2=self.theta2,
            )
        object.__setattr__(self, "center", complex(self.center))

    @property
    def is_centered(self):
        return self.center == 0

    @property
    def span(self):
        return self.theta2 - self.theta1

    @property
    def is_full(self):
        return self.span >= 1 - 1e-12

    @property
    def is_degenerate(self):
        return self.span == 0

    @property
    def diameter(self):
        half = min(math.pi * self.span, math.pi / 2)
        return math.hypot(self.r2 - self.r1, 2 * self.r2 * math.sin(half))

    @property
    def midpoint(self):
        r = 0.5 * (self.r1 + self.r2)
        return self.center + r * complex(np.exp(2j * np.pi * 0.5 * (self.theta1 + self.theta2)))

    def covering_radius(self):
        """Radio de un disco centrado en `midpoint` que contiene al sector."""
        if self.span >= 0.5:
            return abs(self.midpoint - self.center) + self.r2
        mid = 0.5 * (self.theta1 + self.theta2)
        angles = np.array([self.theta1, mid, self.theta2])
        points = [
            self.center + r * np.exp(2j * np.pi * angles) for r in (self.r1, self.r2)
        ]
        return float(np.max(np.abs(np.concatenate(points) - self.midpoint)))

    def contains(self, z):
        z = np.asarray(z) - self.center
        r = np.abs(z)
        inside = (r >= self.r1) & (r <= self.r2)
        if self.is_full:
            return inside
        theta = (np.angle(z) / (2 * np.pi) - self.theta1) % 1.0
        return inside & (theta <= self.span)

    def scaled(self, factor):
        return AnnulusSector(
            self.r1 * factor, self.r2 * factor, self.theta1, self.theta2, self.center
        )

    def label(self):
        text = (
            f"sector(r=[{self.r1:.6g},{self.r2:.6g}], "
            f"θ=[{self.theta1:.6g},{self.theta2:.6g}]"
        )
        if not self.is_centered:
            text += f", c={self.center.real:.6g}{self.center.imag:+.6g}j"
        return text + ")"

    def to_dict(self):
        return {
            "kind": "annulus_sector",
            "r1": self.r1,
            "r2": self.r2,
            "theta1": self.theta1,
            "theta2": self.theta2,
            "center": [self.center.real, self.center.imag],
        }


@dataclass(frozen=True)
class Rectangle:
    """Rectángulo semiabierto [x0, x1) × [y0, y1) (solo para el conteo de Gauss)."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise DomainError("Rectángulo mal formado", **asdict(self))

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    @property
    def is_degenerate(self):
        return False

    def label(self):
        return f"rect([{self.x0:.6g},{self.x1:.6g})×[{self.y0:.6g},{self.y1:.6g}))"

    def to_dict(self):
        return {"kind": "rectangle", **asdict(self)}


def region_from_dict(data):
    """
    Construye una región a partir de su forma serializada.

    Raises:
        DomainError: si el tipo de región no se reconoce
    """
    kind = data.get("kind")
    center = data.get("center", [0.0, 0.0])
    if not isinstance(center, complex):
        center = complex(center[0], center[1])
    if kind == "disk":
        return Disk(float(data["r"]), center)
    if kind == "annulus_sector":
        return AnnulusSector(
            float(data["r1"]),
            float(data["r2"]),
            float(data.get("theta1", 0.0)),
            float(data.get("theta2", 1.0)),
            center,
        )
    if kind == "rectangle":
        return Rectangle(
            float(data["x0"]), float(data["x1"]), float(data["y0"]), float(data["y1"])
        )
    raise DomainError("Tipo de región desconocido", kind=kind)


def region_sort_key(region):
    """Orden determinista de regiones para fusionar resultados concurrentes."""
    return region.label()
