# app_ceroslab/serializers/experimento_serializers.py
from rest_framework import serializers

from ..models.experimento import ArtefactoExperimento, Experimento
from ..numerics.serialization import config_hash
from .configuracion_serializers import ExperimentConfigSerializer


class ArtefactoExperimentoSerializer(serializers.ModelSerializer):
    """Serializador para los archivos producidos por un experimento."""

    class Meta:
        model = ArtefactoExperimento
        fields = ["id", "nombre", "ruta", "formato", "sha256", "filas", "fecha_creacion"]


class ExperimentoSerializer(serializers.ModelSerializer):
    """Serializador básico; la configuración se valida con el esquema versionado."""

    estado_display = serializers.CharField(source="get_estado_display", read_only=True)
    semilla = serializers.IntegerField(source="semilla_entera", read_only=True)

    class Meta:
        model = Experimento
        fields = [
            "id",
            "nombre",
            "tipo",
            "configuracion",
            "hash_configuracion",
            "semilla",
            "estado",
            "estado_display",
            "resumen",
            "version_software",
            "hash_constantes",
            "directorio_salida",
            "codigo_salida",
            "mensaje_error",
            "fecha_creacion",
            "fecha_inicio",
            "fecha_fin",
        ]
        read_only_fields = [
            "tipo",
            "hash_configuracion",
            "estado",
            "resumen",
            "version_software",
            "hash_constantes",
            "directorio_salida",
            "codigo_salida",
            "mensaje_error",
            "fecha_inicio",
            "fecha_fin",
        ]

    def validate_configuracion(self, value):
        config = ExperimentConfigSerializer(data=value)
        if not config.is_valid():
            raise serializers.ValidationError(config.errors)
        return value

    def _derivados(self, validated_data):
        config = validated_data.get("configuracion")
        if config is None:
            return validated_data
        kinds = {entry.get("kind") for entry in config.get("experiments", [])}
        validated_data["hash_configuracion"] = config_hash(config)
        validated_data["tipo"] = kinds.pop() if len(kinds) == 1 else "lote"
        validated_data["semilla"] = config.get("seed", 0)
        return validated_data

    def create(self, validated_data):
        return super().create(self._derivados(validated_data))

    def update(self, instance, validated_data):
        return super().update(instance, self._derivados(validated_data))


class ExperimentoDetalladoSerializer(ExperimentoSerializer):
    """Serializador detallado con los artefactos y la duración."""

    artefactos = ArtefactoExperimentoSerializer(many=True, read_only=True)
    duracion = serializers.FloatField(read_only=True)

    class Meta(ExperimentoSerializer.Meta):
        fields = ExperimentoSerializer.Meta.fields + ["duracion", "artefactos"]


class EjecutarSerializer(serializers.Serializer):
    """Parámetros de la acción ejecutar."""

    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, required=False)
    threads = serializers.IntegerField(min_value=1, max_value=64, default=1)
