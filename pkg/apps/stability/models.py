"""
Persisted experiment runs.
"""
import uuid
from django.db import models


class ExperimentRun(models.Model):
    """A decay-rate fit or a domination sweep, executed by a Celery worker."""

    class Kind(models.TextChoices):
        TABLE1 = 'table1', 'Decay-rate fit'
        DOMINATION = 'domination', 'Sparse domination sweep'

    class Status(models.TextChoices):
        PENDING = 'pending', 'Pending'
        RUNNING = 'running', 'Running'
        COMPLETED = 'completed', 'Completed'
        REFUSED = 'refused', 'Refused'
        FAILED = 'failed', 'Failed'

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    kind = models.CharField(max_length=20, choices=Kind.choices, db_index=True)
    parameters = models.JSONField(default=dict, blank=True)
    status = models.CharField(max_length=20, choices=Status.choices, default=Status.PENDING, db_index=True)
    report = models.JSONField(
        null=True,
        blank=True,
        help_text='Fit or sweep report, serialized like the CLI JSON output'
    )
    error_message = models.TextField(blank=True, default='')
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        db_table = 'experiment_runs'
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['kind', 'status'], name='experiment_kind_status_idx'),
        ]

    def __str__(self):
        return f"{self.kind} run {self.id} ({self.status})"

    def mark(self, status: str, report=None, error_message: str = ''):
        self.status = status
        if report is not None:
            self.report = report
        self.error_message = error_message
        self.save(update_fields=['status', 'report', 'error_message', 'updated_at'])
