from django.urls import path, include
from rest_framework.routers import DefaultRouter
from app_ceroslab.views.constante_views import ConstanteCalibradaViewSet
from app_ceroslab.views.experimento_views import ExperimentoViewSet
from app_ceroslab.views.laboratorio_views import LaboratorioViewSet


router = DefaultRouter()
router.register(r"experimentos", ExperimentoViewSet, basename="experimento")
router.register(r"constantes", ConstanteCalibradaViewSet, basename="constante")
router.register(r"laboratorio", LaboratorioViewSet, basename="laboratorio")

urlpatterns = [
    path("api/", include(router.urls)),
    path("api-auth/", include("rest_framework.urls", namespace="rest_framework")),
]
