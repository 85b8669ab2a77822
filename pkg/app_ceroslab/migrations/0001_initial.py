# Generated by Django 5.2

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='Experimento',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('nombre', models.CharField(max_length=200, verbose_name='Nombre')),
                ('tipo', models.CharField(choices=[('zero_count_sweep', 'Barrido de conteos de ceros'), ('sector_equidist', 'Equidistribución por sectores'), ('local_disks', 'Discos locales'), ('correlation_suite', 'Correlaciones'), ('spectral_suite', 'Medidas espectrales'), ('weyl_scan', 'Sumas de Weyl'), ('condition_check', 'Condiciones de correlación'), ('transport_check', 'Transporte'), ('lattice_baseline', 'Retículo de Gauss'), ('lote', 'Lote de experimentos')], default='lote', max_length=20, verbose_name='Tipo')),
                ('configuracion', models.JSONField(verbose_name='Configuración')),
                ('hash_configuracion', models.CharField(db_index=True, max_length=64, verbose_name='Hash de configuración')),
                ('semilla', models.DecimalField(decimal_places=0, default=0, max_digits=20, verbose_name='Semilla')),
                ('estado', models.CharField(choices=[('pendiente', 'Pendiente'), ('ejecutando', 'Ejecutando'), ('completado', 'Completado'), ('fallido', 'Fallido')], default='pendiente', max_length=12, verbose_name='Estado')),
                ('resumen', models.JSONField(blank=True, default=dict, verbose_name='Resumen')),
                ('version_software', models.CharField(blank=True, max_length=20, verbose_name='Versión del software')),
                ('hash_constantes', models.CharField(blank=True, max_length=64, verbose_name='Hash de constantes')),
                ('directorio_salida', models.CharField(blank=True, max_length=500, verbose_name='Directorio de salida')),
                ('codigo_salida', models.PositiveSmallIntegerField(blank=True, null=True, verbose_name='Código de salida')),
                ('mensaje_error', models.TextField(blank=True, null=True, verbose_name='Mensaje de error')),
                ('fecha_creacion', models.DateTimeField(auto_now_add=True, verbose_name='Fecha de creación')),
                ('fecha_inicio', models.DateTimeField(blank=True, null=True, verbose_name='Inicio')),
                ('fecha_fin', models.DateTimeField(blank=True, null=True, verbose_name='Fin')),
            ],
            options={
                'verbose_name': 'Experimento',
                'verbose_name_plural': 'Experimentos',
                'ordering': ['-fecha_creacion'],
            },
        ),
        migrations.CreateModel(
            name='ConstanteCalibrada',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('clave', models.SlugField(max_length=60, unique=True, verbose_name='Clave')),
                ('nombre', models.CharField(max_length=100, verbose_name='Nombre')),
                ('valor', models.TextField(verbose_name='Valor')),
                ('tipo', models.CharField(choices=[('numero', 'Número'), ('json', 'JSON'), ('texto', 'Texto')], default='numero', max_length=10, verbose_name='Tipo de dato')),
                ('familia', models.CharField(blank=True, max_length=30, verbose_name='Familia de multiplicadores')),
                ('descripcion', models.TextField(blank=True, null=True, verbose_name='Descripción')),
                ('fecha_actualizacion', models.DateTimeField(auto_now=True, verbose_name='Actualizada')),
            ],
            options={
                'verbose_name': 'Constante calibrada',
                'verbose_name_plural': 'Constantes calibradas',
                'ordering': ['clave'],
            },
        ),
        migrations.CreateModel(
            name='ArtefactoExperimento',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('nombre', models.CharField(max_length=200, verbose_name='Nombre')),
                ('ruta', models.CharField(max_length=500, verbose_name='Ruta')),
                ('formato', models.CharField(choices=[('csv', 'CSV'), ('json', 'JSON'), ('bin', 'Binario')], max_length=4, verbose_name='Formato')),
                ('sha256', models.CharField(max_length=64, verbose_name='SHA-256')),
                ('filas', models.PositiveIntegerField(blank=True, null=True, verbose_name='Filas')),
                ('fecha_creacion', models.DateTimeField(auto_now_add=True, verbose_name='Fecha de creación')),
                ('experimento', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='artefactos', to='app_ceroslab.experimento', verbose_name='Experimento')),
            ],
            options={
                'verbose_name': 'Artefacto de experimento',
                'verbose_name_plural': 'Artefactos de experimento',
                'ordering': ['experimento', 'nombre'],
            },
        ),
    ]
