# Generated by Django 4.2.7 on 2026-10-19 09:14

from django.db import migrations, models
import uuid


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('kind', models.CharField(choices=[('table1', 'Decay-rate fit'), ('domination', 'Sparse domination sweep')], db_index=True, max_length=20)),
                ('parameters', models.JSONField(blank=True, default=dict)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('completed', 'Completed'), ('refused', 'Refused'), ('failed', 'Failed')], db_index=True, default='pending', max_length=20)),
                ('report', models.JSONField(blank=True, help_text='Fit or sweep report, serialized like the CLI JSON output', null=True)),
                ('error_message', models.TextField(blank=True, default='')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'db_table': 'experiment_runs',
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['kind', 'status'], name='experiment_kind_status_idx')],
            },
        ),
    ]
