# app_ceroslab/serializers/configuracion_serializers.py
"""
Esquema versionado de la configuración de experimentos.

Los errores se devuelven por campo, como en cualquier serializador de DRF.
"""
from rest_framework import serializers

from app_ceroslab.numerics.equidist import GaugeKind
from app_ceroslab.numerics.errors import DomainError
from app_ceroslab.numerics.sequences import PRIME_BASES, MultiplierKind
from app_ceroslab.numerics.weights import WeightKind

CONFIG_VERSION = 1
MAX_SEED = 2**64 - 1

EXPERIMENT_KINDS = [
    "zero_count_sweep",
    "sector_equidist",
    "local_disks",
    "correlation_suite",
    "spectral_suite",
    "weyl_scan",
    "condition_check",
    "transport_check",
    "lattice_baseline",
]

# experimentos que construyen F_ξ y necesitan peso y secuencia
NEEDS_SERIES = {
    "zero_count_sweep",
    "sector_equidist",
    "local_disks",
    "weyl_scan",
    "condition_check",
}


class WeightSpecSerializer(serializers.Serializer):
    """Familia φ: log_family(α), power_family(β, c) o tabulated."""

    kind = serializers.ChoiceField(choices=[k.value for k in WeightKind])
    alpha = serializers.FloatField(required=False)
    beta = serializers.FloatField(required=False)
    c = serializers.FloatField(required=False, default=1.0)
    grid_t = serializers.ListField(child=serializers.FloatField(), required=False)
    grid_phi = serializers.ListField(child=serializers.FloatField(), required=False)

    def validate(self, data):
        kind = data["kind"]
        if kind == WeightKind.LOG.value:
            if data.get("alpha") is None:
                raise serializers.ValidationError({"alpha": "log_family requiere α"})
            if data["alpha"] <= 0:
                raise serializers.ValidationError({"alpha": "α debe ser positivo"})
        elif kind == WeightKind.POWER.value:
            if data.get("beta") is None:
                raise serializers.ValidationError({"beta": "power_family requiere β"})
            if not 0 < data["beta"] < 1:
                raise serializers.ValidationError({"beta": "β debe estar en (0, 1)"})
            if data["c"] <= 0:
                raise serializers.ValidationError({"c": "c debe ser positivo"})
        else:
            if not data.get("grid_t") or not data.get("grid_phi"):
                raise serializers.ValidationError(
                    {"grid_t": "tabulated requiere las mallas grid_t y grid_phi"}
                )
            from app_ceroslab.numerics.weights import WeightFamily

            try:
                WeightFamily.tabulated(data["grid_t"], data["grid_phi"])
            except DomainError as exc:
                raise serializers.ValidationError({"grid_t": exc.message})
        return data


class SequenceSpecSerializer(serializers.Serializer):
    """Familia ξ; α se acepta como cadena decimal para conservar precisión."""

    kind = serializers.ChoiceField(choices=[k.value for k in MultiplierKind])
    alpha = serializers.CharField(required=False)
    base = serializers.ChoiceField(choices=list(PRIME_BASES), default="steinhaus")

    def validate(self, data):
        if data["kind"] == MultiplierKind.QUADRATIC.value:
            if not data.get("alpha"):
                raise serializers.ValidationError({"alpha": "quadratic requiere α"})
            try:
                float(data["alpha"])
            except ValueError:
                raise serializers.ValidationError({"alpha": "α debe ser un número"})
        return data


class GaugeSpecSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=[k.value for k in GaugeKind])
    c = serializers.FloatField(required=False)
    a = serializers.FloatField(required=False, default=0.0)
    rho0 = serializers.FloatField(required=False)

    def validate(self, data):
        kind = data["kind"]
        if kind == GaugeKind.POWER.value:
            c = data.get("c")
            if c is None or not 0 < c < 0.5:
                raise serializers.ValidationError({"c": "c debe estar en (0, 1/2)"})
        elif kind == GaugeKind.EXP_SQRT.value:
            if data.get("c") is None or data["c"] <= 0:
                raise serializers.ValidationError({"c": "c debe ser positivo"})
        elif kind == GaugeKind.DIOPHANTINE.value:
            if data["a"] < 0:
                raise serializers.ValidationError({"a": "a debe ser ≥ 0"})
        elif kind == GaugeKind.CONSTANT.value:
            if data.get("rho0") is None or data["rho0"] <= 0:
                raise serializers.ValidationError({"rho0": "ρ0 debe ser positivo"})
        return data


class RegionSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=["disk", "annulus_sector", "rectangle"])
    r = serializers.FloatField(required=False)
    center = serializers.ListField(
        child=serializers.FloatField(), min_length=2, max_length=2, required=False
    )
    r1 = serializers.FloatField(required=False)
    r2 = serializers.FloatField(required=False)
    theta1 = serializers.FloatField(required=False)
    theta2 = serializers.FloatField(required=False)
    x0 = serializers.FloatField(required=False)
    x1 = serializers.FloatField(required=False)
    y0 = serializers.FloatField(required=False)
    y1 = serializers.FloatField(required=False)

    def validate(self, data):
        from app_ceroslab.numerics.regions import region_from_dict

        try:
            region_from_dict(data)
        except (KeyError, TypeError):
            raise serializers.ValidationError("Faltan parámetros de la región")
        except DomainError as exc:
            raise serializers.ValidationError(exc.message)
        return data


# ---------------------------------------------------------------------------
# Parámetros por tipo de experimento
# ---------------------------------------------------------------------------

class ZeroCountSweepParams(serializers.Serializer):
    radii = serializers.ListField(child=serializers.FloatField(min_value=1.0), min_length=1)
    seeds = serializers.ListField(child=serializers.IntegerField(min_value=0, max_value=MAX_SEED), required=False)
    min_samples = serializers.IntegerField(min_value=8, required=False)
    localize = serializers.BooleanField(default=False)
    target_diameter = serializers.FloatField(min_value=0.0, required=False)


class SectorEquidistParams(serializers.Serializer):
    r1 = serializers.FloatField(min_value=0.0)
    r2 = serializers.FloatField(min_value=0.0)
    sectors = serializers.IntegerField(min_value=1, default=8)
    min_samples = serializers.IntegerField(min_value=8, required=False)

    def validate(self, data):
        if data["r2"] <= data["r1"]:
            raise serializers.ValidationError({"r2": "Se requiere r2 > r1"})
        return data


class HoleFamilySerializer(serializers.Serializer):
    j_min = serializers.IntegerField(min_value=2)
    j_max = serializers.IntegerField(min_value=2)
    kappa = serializers.FloatField(min_value=0.0, default=1.0)

    def validate(self, data):
        if data["j_max"] < data["j_min"]:
            raise serializers.ValidationError({"j_max": "Se requiere j_max ≥ j_min"})
        return data


class LocalDisksParams(serializers.Serializer):
    disks = RegionSerializer(many=True, required=False)
    count = serializers.IntegerField(min_value=1, required=False)
    modulus_min = serializers.FloatField(min_value=1.0, required=False)
    modulus_max = serializers.FloatField(min_value=1.0, required=False)
    radius_factor = serializers.FloatField(min_value=0.0, default=3.0)
    hole_family = HoleFamilySerializer(required=False)
    min_samples = serializers.IntegerField(min_value=8, required=False)

    def validate(self, data):
        modes = [bool(data.get("disks")), "count" in data, "hole_family" in data]
        if sum(modes) != 1:
            raise serializers.ValidationError(
                "Indique exactamente uno de disks, count u hole_family"
            )
        if "count" in data:
            lo, hi = data.get("modulus_min"), data.get("modulus_max")
            if lo is None or hi is None:
                raise serializers.ValidationError(
                    {"modulus_min": "count requiere modulus_min y modulus_max"}
                )
            if hi < lo:
                raise serializers.ValidationError({"modulus_max": "Se requiere modulus_max ≥ modulus_min"})
        return data


class CorrelationSuiteParams(serializers.Serializer):
    MODES = ["autocorrelation", "chowla", "anticoncentration"]

    mode = serializers.ChoiceField(choices=MODES, default="autocorrelation")
    x = serializers.IntegerField(min_value=1, required=False)
    h_max = serializers.IntegerField(min_value=0, required=False)
    h = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)
    eta = serializers.FloatField(required=False)
    trials = serializers.IntegerField(min_value=1, required=False)
    n = serializers.IntegerField(min_value=1, required=False)
    theta = serializers.FloatField(default=0.0)
    eps = serializers.FloatField(min_value=0.0, default=0.5)
    z_grid = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        required=False,
    )

    def validate(self, data):
        mode = data["mode"]
        if mode in ("autocorrelation", "chowla") and "x" not in data:
            raise serializers.ValidationError({"x": f"{mode} requiere x"})
        if mode == "autocorrelation" and "h_max" not in data and "h" not in data:
            raise serializers.ValidationError({"h_max": "Indique h_max o la lista h"})
        if mode == "chowla":
            for key in ("eta", "trials", "h"):
                if key not in data:
                    raise serializers.ValidationError({key: "chowla requiere este campo"})
        if mode == "anticoncentration":
            for key in ("n", "trials"):
                if key not in data:
                    raise serializers.ValidationError({key: "anticoncentration requiere este campo"})
            if data["trials"] < 1000:
                raise serializers.ValidationError({"trials": "Se requieren al menos 1000 ensayos"})
        return data


class SpectralSuiteParams(serializers.Serializer):
    depth = serializers.IntegerField(min_value=1, max_value=24, default=14)
    n_t = serializers.IntegerField(min_value=1, default=1000)
    d_max = serializers.IntegerField(min_value=1, default=1000)
    h_max = serializers.IntegerField(min_value=0, default=36)
    x = serializers.IntegerField(min_value=1, default=10**6)
    m_max = serializers.IntegerField(min_value=1, max_value=10, required=False)
    extra_depth = serializers.IntegerField(min_value=1, max_value=12, default=6)


class WitnessSerializer(serializers.Serializer):
    count = serializers.IntegerField(min_value=1, default=10)
    sigma_min = serializers.FloatField(min_value=1.0, default=1e3)
    sigma_max = serializers.FloatField(min_value=1.0, default=1e4)
    n_r = serializers.IntegerField(min_value=2, default=32)


class WeylScanParams(serializers.Serializer):
    radii = serializers.ListField(child=serializers.FloatField(min_value=1.0), min_length=1)
    n_theta = serializers.IntegerField(min_value=1, default=64)
    truncation = serializers.BooleanField(default=False)
    witness = WitnessSerializer(required=False)


class ConditionCheckParams(serializers.Serializer):
    EPS_MODELS = ["mirsky", "thue_morse"]

    radii = serializers.ListField(child=serializers.FloatField(min_value=1.0), min_length=1)
    beta_exponent = serializers.FloatField(default=0.09)
    p = serializers.FloatField(default=2.0)
    q = serializers.FloatField(default=1.1)
    A = serializers.FloatField(min_value=0.0, default=6.0)
    eps_model = serializers.ChoiceField(choices=EPS_MODELS, required=False)

    def validate(self, data):
        if data["p"] <= 1:
            raise serializers.ValidationError({"p": "p debe ser > 1"})
        if data["q"] <= 1:
            raise serializers.ValidationError({"q": "q debe ser > 1"})
        if not 0 < data["beta_exponent"] < 0.5:
            raise serializers.ValidationError({"beta_exponent": "Debe estar en (0, 1/2)"})
        return data


class TransportCheckParams(serializers.Serializer):
    measure = serializers.ChoiceField(choices=["lattice", "zeros"], default="lattice")
    disks = RegionSerializer(many=True, required=False)
    count = serializers.IntegerField(min_value=1, required=False)
    r_max = serializers.FloatField(min_value=0.0, default=20.0)
    center_box = serializers.FloatField(min_value=0.0, default=50.0)
    tau_max = serializers.FloatField(min_value=0.0, required=False)

    def validate(self, data):
        if not data.get("disks") and "count" not in data:
            raise serializers.ValidationError({"disks": "Indique disks o count"})
        return data


class LatticeBaselineParams(serializers.Serializer):
    regions = RegionSerializer(many=True, required=False)
    count = serializers.IntegerField(min_value=0, required=False)
    r_max = serializers.FloatField(min_value=0.0, default=50.0)

    def validate(self, data):
        if not data.get("regions") and "count" not in data:
            raise serializers.ValidationError({"regions": "Indique regions o count"})
        return data


PARAMS_SERIALIZERS = {
    "zero_count_sweep": ZeroCountSweepParams,
    "sector_equidist": SectorEquidistParams,
    "local_disks": LocalDisksParams,
    "correlation_suite": CorrelationSuiteParams,
    "spectral_suite": SpectralSuiteParams,
    "weyl_scan": WeylScanParams,
    "condition_check": ConditionCheckParams,
    "transport_check": TransportCheckParams,
    "lattice_baseline": LatticeBaselineParams,
}


class ExperimentEntrySerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=EXPERIMENT_KINDS)
    name = serializers.SlugField(required=False)
    params = serializers.DictField(default=dict)
    gauge = GaugeSpecSerializer(required=False)
    tau = serializers.FloatField(min_value=0.0, required=False)
    C = serializers.FloatField(min_value=0.0, required=False)

    def validate(self, data):
        params = PARAMS_SERIALIZERS[data["kind"]](data=data["params"])
        if not params.is_valid():
            raise serializers.ValidationError({"params": params.errors})
        data["params"] = params.validated_data
        return data


class ExperimentConfigSerializer(serializers.Serializer):
    """Documento completo de configuración."""

    version = serializers.IntegerField(default=CONFIG_VERSION)
    name = serializers.CharField(max_length=200, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, default=0)
    weight = WeightSpecSerializer(required=False)
    sequence = SequenceSpecSerializer(required=False)
    gauge = GaugeSpecSerializer(required=False)
    tau = serializers.FloatField(min_value=0.0, required=False)
    C = serializers.FloatField(min_value=0.0, required=False)
    window_constant = serializers.FloatField(min_value=0.0, required=False)
    max_index = serializers.IntegerField(min_value=1, required=False)
    experiments = ExperimentEntrySerializer(many=True, allow_empty=True, default=list)

    def validate_version(self, value):
        if value != CONFIG_VERSION:
            raise serializers.ValidationError(f"Versión de esquema no soportada: {value}")
        return value

    def validate(self, data):
        errors = {}
        for i, entry in enumerate(data.get("experiments", [])):
            kind = entry["kind"]
            if kind in NEEDS_SERIES or kind == "transport_check" and entry["params"]["measure"] == "zeros":
                for key in ("weight", "sequence"):
                    if key not in data:
                        errors[f"experiments[{i}].{key}"] = f"{kind} requiere {key}"
            if kind in ("correlation_suite", "spectral_suite") and "sequence" not in data:
                errors[f"experiments[{i}].sequence"] = f"{kind} requiere sequence"
        if errors:
            raise serializers.ValidationError(errors)
        return data
