# app_ceroslab/views/constante_views.py
from django_filters.rest_framework import DjangoFilterBackend
from rest_framework import filters, permissions, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from ..models.constante import ConstanteCalibrada
from ..numerics.errors import LabError
from ..serializers.constante_serializers import ConstanteCalibradaSerializer
from ..services.constants import export_constants, resolve_constants
from .errores import respuesta_error


class ConstanteCalibradaViewSet(viewsets.ModelViewSet):
    """
    API endpoint para gestionar las constantes calibradas.

    Las filas sobrescriben los valores incorporados; el archivo
    --constants tiene prioridad sobre ellas.
    """

    queryset = ConstanteCalibrada.objects.all()
    serializer_class = ConstanteCalibradaSerializer
    filter_backends = [
        DjangoFilterBackend,
        filters.SearchFilter,
        filters.OrderingFilter,
    ]
    filterset_fields = ["tipo", "familia"]
    search_fields = ["clave", "nombre", "descripcion"]
    ordering_fields = ["clave", "fecha_actualizacion"]
    ordering = ["clave"]

    def get_permissions(self):
        """Define los permisos según la acción."""
        if self.action in ["list", "retrieve", "exportar"]:
            permission_classes = [permissions.IsAuthenticated]
        else:
            permission_classes = [permissions.IsAdminUser]
        return [permission() for permission in permission_classes]

    @action(detail=False, methods=["get"])
    def exportar(self, request):
        """
        Retorna las constantes resueltas en el formato del archivo --constants.
        """
        try:
            constantes = resolve_constants()
        except LabError as exc:
            return respuesta_error(exc)
        return Response(export_constants(constantes))
