"""
Celery configuration for sparsekit.

Long-running numerical experiments run here instead of in the request cycle:
- Decay-rate fits of the sparse indices
- Sparse-domination soundness sweeps over generated corpora
"""
import os
from celery import Celery

# Set the default Django settings module
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

app = Celery('sparsekit')

# Load config from Django settings
app.config_from_object('django.conf:settings', namespace='CELERY')

# Auto-discover tasks in all installed apps
app.autodiscover_tasks()
