# app_ceroslab/models/__init__.py

from .experimento import Experimento, ArtefactoExperimento
from .constante import ConstanteCalibrada
