# app_ceroslab/views/experimento_views.py
import logging

from django_filters.rest_framework import DjangoFilterBackend
from rest_framework import filters, permissions, status, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from ..models.experimento import Experimento
from ..numerics.errors import LabError
from ..serializers.experimento_serializers import (
    ArtefactoExperimentoSerializer,
    EjecutarSerializer,
    ExperimentoDetalladoSerializer,
    ExperimentoSerializer,
)
from ..services import runner
from .errores import respuesta_error

logger = logging.getLogger(__name__)


class ExperimentoViewSet(viewsets.ModelViewSet):
    """
    API endpoint para gestionar experimentos.

    Permite registrar configuraciones, validarlas sin calcular y
    ejecutarlas, y consultar el resumen y los artefactos de cada corrida.
    """

    queryset = Experimento.objects.all()
    filter_backends = [
        DjangoFilterBackend,
        filters.SearchFilter,
        filters.OrderingFilter,
    ]
    filterset_fields = ["estado", "tipo", "hash_configuracion", "codigo_salida"]
    search_fields = ["nombre", "hash_configuracion"]
    ordering_fields = ["fecha_creacion", "fecha_fin", "nombre"]
    ordering = ["-fecha_creacion"]

    def get_serializer_class(self):
        """Retorna el serializador apropiado según la acción."""
        if self.action == "retrieve":
            return ExperimentoDetalladoSerializer
        if self.action == "ejecutar":
            return EjecutarSerializer
        return ExperimentoSerializer

    def get_permissions(self):
        """Define los permisos según la acción."""
        if self.action in ["list", "retrieve", "artefactos", "validar"]:
            permission_classes = [permissions.IsAuthenticated]
        else:
            permission_classes = [permissions.IsAdminUser]
        return [permission() for permission in permission_classes]

    @action(detail=False, methods=["post"])
    def validar(self, request):
        """
        Valida una configuración sin ejecutar ningún cálculo.
        """
        errores = runner.validate(request.data)
        if errores:
            return Response(
                {"valido": False, "errores": errores}, status=status.HTTP_400_BAD_REQUEST
            )
        return Response({"valido": True, "errores": []})

    @action(detail=True, methods=["post"])
    def ejecutar(self, request, pk=None):
        """
        Ejecuta la configuración del experimento y registra sus artefactos.
        """
        experimento = self.get_object()
        if experimento.estado == "ejecutando":
            return Response(
                {"error": "El experimento ya se está ejecutando."},
                status=status.HTTP_409_CONFLICT,
            )
        parametros = EjecutarSerializer(data=request.data)
        parametros.is_valid(raise_exception=True)
        try:
            runner.run(
                experimento.configuracion,
                seed=parametros.validated_data.get("seed"),
                threads=parametros.validated_data["threads"],
                experimento=experimento,
            )
        except LabError as exc:
            experimento.refresh_from_db()
            if experimento.estado != "fallido":
                experimento.marcar_fallido(exc.message, exc.exit_code)
            return respuesta_error(exc)
        experimento.refresh_from_db()
        serializer = ExperimentoDetalladoSerializer(experimento)
        return Response(serializer.data)

    @action(detail=True, methods=["get"])
    def artefactos(self, request, pk=None):
        """
        Lista los archivos producidos por el experimento.
        """
        experimento = self.get_object()
        serializer = ArtefactoExperimentoSerializer(experimento.artefactos.all(), many=True)
        return Response(serializer.data)
