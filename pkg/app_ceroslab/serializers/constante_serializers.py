# app_ceroslab/serializers/constante_serializers.py
import json

from rest_framework import serializers

from ..models.constante import ConstanteCalibrada


class ConstanteCalibradaSerializer(serializers.ModelSerializer):
    """Serializador para el modelo ConstanteCalibrada."""

    valor_tipado = serializers.JSONField(read_only=True)

    class Meta:
        model = ConstanteCalibrada
        fields = [
            "id",
            "clave",
            "nombre",
            "valor",
            "tipo",
            "familia",
            "descripcion",
            "valor_tipado",
            "fecha_actualizacion",
        ]

    def validate(self, data):
        """El valor debe poder leerse con el tipo declarado."""
        tipo = data.get("tipo", getattr(self.instance, "tipo", "numero"))
        valor = data.get("valor", getattr(self.instance, "valor", ""))
        if tipo == "numero":
            try:
                float(valor)
            except ValueError:
                raise serializers.ValidationError({"valor": "El valor debe ser numérico."})
        elif tipo == "json":
            try:
                json.loads(valor)
            except ValueError:
                raise serializers.ValidationError({"valor": "El valor debe ser JSON válido."})
        return data
