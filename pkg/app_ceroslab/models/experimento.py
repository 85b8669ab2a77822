# app_ceroslab/models/experimento.py
from django.db import models
from django.utils import timezone


class Experimento(models.Model):
    """
    Ejecución registrada de una configuración de experimentos.

    Guarda la configuración validada, su hash y la semilla, de modo que dos
    ejecuciones con el mismo hash y la misma semilla son comparables.
    """

    TIPO_CHOICES = [
        ("zero_count_sweep", "Barrido de conteos de ceros"),
        ("sector_equidist", "Equidistribución por sectores"),
        ("local_disks", "Discos locales"),
        ("correlation_suite", "Correlaciones"),
        ("spectral_suite", "Medidas espectrales"),
        ("weyl_scan", "Sumas de Weyl"),
        ("condition_check", "Condiciones de correlación"),
        ("transport_check", "Transporte"),
        ("lattice_baseline", "Retículo de Gauss"),
        ("lote", "Lote de experimentos"),
    ]

    ESTADO_CHOICES = [
        ("pendiente", "Pendiente"),
        ("ejecutando", "Ejecutando"),
        ("completado", "Completado"),
        ("fallido", "Fallido"),
    ]

    nombre = models.CharField(max_length=200, verbose_name="Nombre")
    tipo = models.CharField(
        max_length=20, choices=TIPO_CHOICES, default="lote", verbose_name="Tipo"
    )
    configuracion = models.JSONField(verbose_name="Configuración")
    hash_configuracion = models.CharField(
        max_length=64, db_index=True, verbose_name="Hash de configuración"
    )
    semilla = models.DecimalField(
        max_digits=20, decimal_places=0, default=0, verbose_name="Semilla"
    )
    estado = models.CharField(
        max_length=12, choices=ESTADO_CHOICES, default="pendiente", verbose_name="Estado"
    )
    resumen = models.JSONField(default=dict, blank=True, verbose_name="Resumen")
    version_software = models.CharField(
        max_length=20, blank=True, verbose_name="Versión del software"
    )
    hash_constantes = models.CharField(
        max_length=64, blank=True, verbose_name="Hash de constantes"
    )
    directorio_salida = models.CharField(
        max_length=500, blank=True, verbose_name="Directorio de salida"
    )
    codigo_salida = models.PositiveSmallIntegerField(
        null=True, blank=True, verbose_name="Código de salida"
    )
    mensaje_error = models.TextField(blank=True, null=True, verbose_name="Mensaje de error")
    fecha_creacion = models.DateTimeField(auto_now_add=True, verbose_name="Fecha de creación")
    fecha_inicio = models.DateTimeField(null=True, blank=True, verbose_name="Inicio")
    fecha_fin = models.DateTimeField(null=True, blank=True, verbose_name="Fin")

    class Meta:
        verbose_name = "Experimento"
        verbose_name_plural = "Experimentos"
        ordering = ["-fecha_creacion"]

    def __str__(self):
        return f"{self.nombre} ({self.get_estado_display()})"

    @property
    def semilla_entera(self):
        return int(self.semilla)

    @property
    def duracion(self):
        """Duración de la ejecución en segundos, o None si no terminó."""
        if self.fecha_inicio and self.fecha_fin:
            return (self.fecha_fin - self.fecha_inicio).total_seconds()
        return None

    def marcar_ejecutando(self):
        self.estado = "ejecutando"
        self.fecha_inicio = timezone.now()
        self.save(update_fields=["estado", "fecha_inicio"])

    def marcar_completado(self, resumen):
        self.estado = "completado"
        self.resumen = resumen
        self.codigo_salida = 0
        self.fecha_fin = timezone.now()
        self.save(update_fields=["estado", "resumen", "codigo_salida", "fecha_fin"])

    def marcar_fallido(self, mensaje, codigo):
        self.estado = "fallido"
        self.mensaje_error = mensaje
        self.codigo_salida = codigo
        self.fecha_fin = timezone.now()
        self.save(update_fields=["estado", "mensaje_error", "codigo_salida", "fecha_fin"])


class ArtefactoExperimento(models.Model):
    """Archivo producido por un experimento, con su huella sha256."""

    FORMATO_CHOICES = [
        ("csv", "CSV"),
        ("json", "JSON"),
        ("bin", "Binario"),
    ]

    experimento = models.ForeignKey(
        Experimento,
        on_delete=models.CASCADE,
        related_name="artefactos",
        verbose_name="Experimento",
    )
    nombre = models.CharField(max_length=200, verbose_name="Nombre")
    ruta = models.CharField(max_length=500, verbose_name="Ruta")
    formato = models.CharField(max_length=4, choices=FORMATO_CHOICES, verbose_name="Formato")
    sha256 = models.CharField(max_length=64, verbose_name="SHA-256")
    filas = models.PositiveIntegerField(null=True, blank=True, verbose_name="Filas")
    fecha_creacion = models.DateTimeField(auto_now_add=True, verbose_name="Fecha de creación")

    class Meta:
        verbose_name = "Artefacto de experimento"
        verbose_name_plural = "Artefactos de experimento"
        ordering = ["experimento", "nombre"]

    def __str__(self):
        return f"{self.nombre} [{self.formato}]"
