# app_ceroslab/models/constante.py
import json

from django.db import models


class ConstanteCalibrada(models.Model):
    """
    Constante ajustada en una corrida de calibración y congelada como umbral
    de regresión (C, τ, K, ...). Se resuelve por encima de los valores
    incorporados y por debajo del archivo --constants.
    """

    TIPO_CHOICES = [
        ("numero", "Número"),
        ("json", "JSON"),
        ("texto", "Texto"),
    ]

    clave = models.SlugField(max_length=60, unique=True, verbose_name="Clave")
    nombre = models.CharField(max_length=100, verbose_name="Nombre")
    valor = models.TextField(verbose_name="Valor")
    tipo = models.CharField(
        max_length=10,
        choices=TIPO_CHOICES,
        default="numero",
        verbose_name="Tipo de dato",
    )
    familia = models.CharField(
        max_length=30, blank=True, verbose_name="Familia de multiplicadores"
    )
    descripcion = models.TextField(blank=True, null=True, verbose_name="Descripción")
    fecha_actualizacion = models.DateTimeField(auto_now=True, verbose_name="Actualizada")

    class Meta:
        verbose_name = "Constante calibrada"
        verbose_name_plural = "Constantes calibradas"
        ordering = ["clave"]

    def __str__(self):
        return f"{self.clave} = {self.valor[:30]}"

    @property
    def valor_tipado(self):
        """
        Devuelve el valor convertido al tipo de dato correspondiente.

        Returns:
            float, objeto JSON o texto; None si el valor no se puede convertir
        """
        if self.tipo == "numero":
            try:
                return float(self.valor)
            except (ValueError, TypeError):
                return None
        if self.tipo == "json":
            try:
                return json.loads(self.valor)
            except (ValueError, TypeError):
                return None
        return self.valor
