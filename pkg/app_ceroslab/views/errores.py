# app_ceroslab/views/errores.py
from rest_framework import status
from rest_framework.response import Response

from ..numerics.errors import EXIT_NUMERIC


def respuesta_error(exc):
    """
    Convierte un LabError en una respuesta JSON.

    Los errores numéricos devuelven 422; validación, dominio y capacidad, 400.
    """
    codigo = (
        status.HTTP_422_UNPROCESSABLE_ENTITY
        if exc.exit_code == EXIT_NUMERIC
        else status.HTTP_400_BAD_REQUEST
    )
    return Response(exc.as_dict(), status=codigo)
