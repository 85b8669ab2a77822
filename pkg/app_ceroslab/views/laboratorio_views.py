# app_ceroslab/views/laboratorio_views.py
import numpy as np
from rest_framework import permissions, status, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from ..numerics import correlations as corr
from ..numerics.errors import LabError
from ..numerics.sequences import MultiplierKind, generate
from ..serializers.configuracion_serializers import (
    GaugeSpecSerializer,
    SequenceSpecSerializer,
    WeightSpecSerializer,
)
from ..serializers.laboratorio_serializers import (
    CorrelacionQuerySerializer,
    DensidadEspectralQuerySerializer,
    GaugeQuerySerializer,
    PesoQuerySerializer,
    SecuenciaQuerySerializer,
)
from ..services.contexto import build_gauge, build_multiplier, build_weight
from .errores import respuesta_error


def _validar(serializer_class, data):
    serializer = serializer_class(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer


class LaboratorioViewSet(viewsets.ViewSet):
    """
    Endpoints numéricos de solo lectura.

    Cálculos pequeños y sin estado (pesos, secuencias, correlaciones,
    densidades espectrales y gauges); nada se guarda en la base de datos.
    """

    permission_classes = [permissions.IsAuthenticated]

    def handle_exception(self, exc):
        if isinstance(exc, LabError):
            return respuesta_error(exc)
        return super().handle_exception(exc)

    @action(detail=False, methods=["get"])
    def pesos(self, request):
        """
        ν(R), σ(R), log μ(R) y Δ para cada radio pedido.
        """
        query = _validar(PesoQuerySerializer, request.query_params)
        spec = _validar(WeightSpecSerializer, query.to_weight_spec())
        weight = build_weight(spec.validated_data)
        filas = []
        for R in query.validated_data["R"]:
            nu, sigma = weight.nu_sigma(R)
            filas.append(
                {
                    "R": R,
                    "nu": nu,
                    "sigma": sigma,
                    "log_mu": weight.log_mu(R),
                    "delta": weight.delta_at(R),
                }
            )
        return Response({"peso": weight.to_dict(), "filas": filas})

    @action(detail=False, methods=["get"])
    def secuencia(self, request):
        """
        Valores ξ(n) para n0 ≤ n < n1 como pares (re, im).
        """
        query = _validar(SecuenciaQuerySerializer, request.query_params)
        spec = _validar(SequenceSpecSerializer, query.to_sequence_spec())
        data = query.validated_data
        buffer = generate(build_multiplier(spec.validated_data), data["n0"], data["n1"], data["seed"])
        valores = [[float(v.real), float(v.imag)] for v in buffer.values]
        return Response(
            {
                "secuencia": buffer.label,
                "n0": buffer.n0,
                "n1": buffer.n1,
                "semilla": data["seed"],
                "valores": valores,
            }
        )

    @action(detail=False, methods=["get"])
    def correlacion(self, request):
        """
        Autocorrelaciones (1/X) Σ ξ(n) conj ξ(n+h) y el valor límite conocido.
        """
        query = _validar(CorrelacionQuerySerializer, request.query_params)
        spec = _validar(SequenceSpecSerializer, query.to_sequence_spec())
        data = query.validated_data
        multiplier = build_multiplier(spec.validated_data)
        hs = sorted(set(data["h"]))
        seq = generate(multiplier, 0, data["x"] + hs[-1] + 1, data["seed"])
        filas = []
        for h in hs:
            value = corr.autocorr(seq, data["x"], h)
            fila = {"h": h, "re": value.real, "im": value.imag, "modelo": None}
            if multiplier.kind is MultiplierKind.THUE_MORSE:
                fila["modelo"] = float(corr.tm_sigma(h))
            elif multiplier.kind is MultiplierKind.SQUAREFREE:
                fila["modelo"] = corr.mirsky_D(h)
            filas.append(fila)
        return Response({"secuencia": seq.label, "x": data["x"], "filas": filas})

    @action(detail=False, methods=["get"], url_path="densidad-espectral")
    def densidad_espectral(self, request):
        """
        |P_N(t)|²/N con N = 2^depth y, para Thue–Morse, el producto de Riesz.
        """
        query = _validar(DensidadEspectralQuerySerializer, request.query_params)
        data = query.validated_data
        N = 2 ** data["depth"]
        seq = generate(MultiplierKind(data["kind"]), 0, N)
        t = np.asarray(data["t"], dtype=float)
        empirica = np.asarray(corr.empirical_spectral_density(seq, N, t), dtype=float)
        respuesta = {"familia": data["kind"], "N": N, "t": t.tolist(), "empirica": empirica.tolist()}
        if data["kind"] == MultiplierKind.THUE_MORSE.value:
            modelo = np.asarray(corr.tm_riesz_density(t, data["depth"]), dtype=float)
            respuesta["modelo"] = modelo.tolist()
        return Response(respuesta)

    @action(detail=False, methods=["get"])
    def gauge(self, request):
        """
        ρ(R) del gauge pedido, o del recomendado para la familia de la secuencia.
        """
        query = _validar(GaugeQuerySerializer, request.query_params)
        weight = build_weight(_validar(WeightSpecSerializer, query.to_weight_spec()).validated_data)
        spec = query.to_gauge_spec()
        if spec is not None:
            spec = _validar(GaugeSpecSerializer, spec).validated_data
        family = query.validated_data.get("sequence")
        multiplier = build_multiplier({"kind": family}) if family and spec is None else None
        if multiplier is None and spec is None:
            return Response({"error": "Gauge no especificado."}, status=status.HTTP_400_BAD_REQUEST)
        gauge = build_gauge(spec, weight, multiplier)
        filas = [{"R": R, "rho": gauge.rho(R)} for R in query.validated_data["R"]]
        return Response({"gauge": gauge.to_dict(), "filas": filas})
