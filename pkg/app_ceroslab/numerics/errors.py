# app_ceroslab/numerics/errors.py
"""
Jerarquía de errores del laboratorio numérico.

Cada error lleva el código de salida que la línea de comandos devuelve
(2 validación, 3 capacidad, 4 numérico).
"""

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_NUMERIC = 4


class LabError(Exception):
    """Error base de todas las operaciones del laboratorio."""

    exit_code = EXIT_VALIDATION

    def __init__(self, message, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def as_dict(self):
        return {"error": self.message, "tipo": type(self).__name__, "detalle": self.detail}


class DomainError(LabError, ValueError):
    """Argumento fuera del dominio de la operación."""


class OutOfDomainError(DomainError):
    """Punto fuera de la malla de una familia tabulada."""


class OutOfRangeError(DomainError):
    """Valor fuera del rango alcanzado por φ."""


class PreconditionError(DomainError):
    """Régimen de parámetros no admitido; la operación se niega a ejecutarse."""


class GaugeUndefinedError(DomainError):
    """El gauge radial no está definido (σ ≤ 1)."""


class RangeError(LabError, IndexError):
    """El buffer de la secuencia no cubre los índices requeridos."""


class CapacityError(LabError):
    """Una ventana o un rango excede la capacidad configurada."""

    exit_code = EXIT_CAPACITY

    def __init__(self, message, required_max_index=None, **detail):
        super().__init__(message, required_max_index=required_max_index, **detail)
        self.required_max_index = required_max_index


class CoverageError(CapacityError):
    """La región ampliada sale del dominio donde se calcularon los ceros."""


class NumericError(LabError, ArithmeticError):
    """Falla de convergencia numérica; `detail` lleva los diagnósticos."""

    exit_code = EXIT_NUMERIC


class OnContourZeroError(NumericError):
    """Un cero permanece sobre el contorno después de todas las perturbaciones."""
