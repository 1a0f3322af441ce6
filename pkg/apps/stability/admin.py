"""
Admin configuration for stability app.
"""
from django.contrib import admin
from apps.stability.models import ExperimentRun


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """Admin interface for ExperimentRun model."""
    list_display = ['id', 'kind', 'status', 'created_at', 'updated_at']
    list_filter = ['kind', 'status', 'created_at']
    search_fields = ['id', 'error_message']
    readonly_fields = ['id', 'created_at', 'updated_at']
    date_hierarchy = 'created_at'
