# Generated by Django 5.2.7 on 2026-10-18 10:12

import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(primary_key=True, serialize=False)),
                ('uuid', models.UUIDField(db_index=True, default=uuid.uuid4, editable=False, unique=True, verbose_name='UUID público')),
                ('created_at', models.DateTimeField(auto_now_add=True, verbose_name='Fecha de creación')),
                ('updated_at', models.DateTimeField(auto_now=True, verbose_name='Última actualización')),
                ('command', models.CharField(max_length=30, verbose_name='Comando')),
                ('status', models.CharField(choices=[('running', 'En ejecución'), ('completed', 'Completada'), ('failed', 'Fallida')], default='running', max_length=20, verbose_name='Estado')),
                ('config_hash', models.CharField(blank=True, db_index=True, help_text='SHA-256 de la configuración resuelta (sin threads ni output_dir)', max_length=64, verbose_name='Hash de configuración')),
                ('master_seed', models.BigIntegerField(blank=True, null=True, verbose_name='Semilla maestra')),
                ('exit_code', models.PositiveSmallIntegerField(blank=True, null=True, verbose_name='Código de salida')),
                ('failed_stage', models.CharField(blank=True, max_length=100, verbose_name='Etapa fallida')),
                ('elapsed_ms', models.FloatField(blank=True, null=True, verbose_name='Duración (ms)')),
                ('output_dir', models.CharField(blank=True, max_length=500, verbose_name='Directorio de salida')),
                ('csv_body', models.TextField(blank=True, verbose_name='Cuerpo CSV')),
                ('message', models.TextField(blank=True, verbose_name='Mensaje')),
            ],
            options={
                'verbose_name': 'Ejecución',
                'verbose_name_plural': 'Ejecuciones',
                'db_table': 'experiment_runs',
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
