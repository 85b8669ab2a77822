# app_ceroslab/serializers/laboratorio_serializers.py
"""Parámetros de consulta de los endpoints numéricos de solo lectura."""
from rest_framework import serializers

from ..numerics.equidist import GaugeKind
from ..numerics.sequences import MultiplierKind, PRIME_BASES
from ..numerics.weights import WeightKind

MAX_QUERY_TERMS = 10_000
MAX_QUERY_X = 1_000_000


class CommaListField(serializers.ListField):
    """Acepta "1,2,3" en la query string además de listas JSON."""

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [part for part in data.split(",") if part.strip()]
        return super().to_internal_value(data)

    def get_value(self, dictionary):
        return dictionary.get(self.field_name, serializers.empty)


class PesoQuerySerializer(serializers.Serializer):
    family = serializers.ChoiceField(choices=[WeightKind.LOG.value, WeightKind.POWER.value])
    alpha = serializers.FloatField(required=False)
    beta = serializers.FloatField(required=False)
    c = serializers.FloatField(default=1.0)
    R = CommaListField(child=serializers.FloatField(min_value=1.0), min_length=1, max_length=200)

    def to_weight_spec(self):
        data = self.validated_data
        spec = {"kind": data["family"], "c": data["c"]}
        for key in ("alpha", "beta"):
            if data.get(key) is not None:
                spec[key] = data[key]
        return spec


class SequenceQueryMixin:
    def to_sequence_spec(self):
        data = self.validated_data
        spec = {"kind": data["kind"], "base": data["base"]}
        if data.get("alpha"):
            spec["alpha"] = data["alpha"]
        return spec


class SecuenciaQuerySerializer(SequenceQueryMixin, serializers.Serializer):
    kind = serializers.ChoiceField(choices=[k.value for k in MultiplierKind])
    alpha = serializers.CharField(required=False)
    base = serializers.ChoiceField(choices=list(PRIME_BASES), default="steinhaus")
    n0 = serializers.IntegerField(min_value=0, default=0)
    n1 = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, default=0)

    def validate(self, data):
        if data["n1"] <= data["n0"]:
            raise serializers.ValidationError({"n1": "Se requiere n1 > n0"})
        if data["n1"] - data["n0"] > MAX_QUERY_TERMS:
            raise serializers.ValidationError(
                {"n1": f"Se permiten hasta {MAX_QUERY_TERMS} términos por consulta"}
            )
        return data


class CorrelacionQuerySerializer(SequenceQueryMixin, serializers.Serializer):
    kind = serializers.ChoiceField(choices=[k.value for k in MultiplierKind])
    alpha = serializers.CharField(required=False)
    base = serializers.ChoiceField(choices=list(PRIME_BASES), default="steinhaus")
    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, default=0)
    x = serializers.IntegerField(min_value=1, max_value=MAX_QUERY_X)
    h = CommaListField(child=serializers.IntegerField(min_value=0, max_value=4096), min_length=1)


class DensidadEspectralQuerySerializer(serializers.Serializer):
    FAMILIES = ["thue_morse", "grs", "squarefree"]

    kind = serializers.ChoiceField(choices=FAMILIES)
    depth = serializers.IntegerField(min_value=1, max_value=16, default=10)
    t = CommaListField(child=serializers.FloatField(), min_length=1, max_length=2000)


class GaugeQuerySerializer(PesoQuerySerializer):
    gauge = serializers.ChoiceField(choices=[k.value for k in GaugeKind], required=False)
    gauge_c = serializers.FloatField(required=False)
    gauge_a = serializers.FloatField(default=0.0)
    rho0 = serializers.FloatField(required=False)
    sequence = serializers.ChoiceField(choices=[k.value for k in MultiplierKind], required=False)

    def validate(self, data):
        if "gauge" not in data and "sequence" not in data:
            raise serializers.ValidationError(
                {"gauge": "Indique gauge o la familia de la secuencia para el gauge recomendado"}
            )
        return data

    def to_gauge_spec(self):
        data = self.validated_data
        if "gauge" not in data:
            return None
        spec = {"kind": data["gauge"], "a": data["gauge_a"]}
        if data.get("gauge_c") is not None:
            spec["c"] = data["gauge_c"]
        if data.get("rho0") is not None:
            spec["rho0"] = data["rho0"]
        return spec
