from django.contrib import admin

from app_ceroslab.models.constante import ConstanteCalibrada
from app_ceroslab.models.experimento import ArtefactoExperimento, Experimento


class ArtefactoInline(admin.TabularInline):
    model = ArtefactoExperimento
    extra = 0
    readonly_fields = ['nombre', 'ruta', 'formato', 'sha256', 'filas', 'fecha_creacion']
    can_delete = False

@admin.register(Experimento)
class ExperimentoAdmin(admin.ModelAdmin):
    list_display = ['nombre', 'tipo', 'estado', 'semilla', 'codigo_salida', 'fecha_creacion']
    list_filter = ['tipo', 'estado', 'version_software']
    search_fields = ['nombre', 'hash_configuracion']
    readonly_fields = ['hash_configuracion', 'hash_constantes', 'version_software',
                       'fecha_inicio', 'fecha_fin']
    ordering = ['-fecha_creacion']
    inlines = [ArtefactoInline]

@admin.register(ArtefactoExperimento)
class ArtefactoExperimentoAdmin(admin.ModelAdmin):
    list_display = ['nombre', 'experimento', 'formato', 'filas', 'sha256']
    list_filter = ['formato']
    search_fields = ['nombre', 'sha256']
    ordering = ['experimento', 'nombre']

@admin.register(ConstanteCalibrada)
class ConstanteCalibradaAdmin(admin.ModelAdmin):
    list_display = ['clave', 'nombre', 'valor', 'tipo', 'familia', 'fecha_actualizacion']
    list_filter = ['tipo', 'familia']
    search_fields = ['clave', 'nombre', 'descripcion']
    ordering = ['clave']
