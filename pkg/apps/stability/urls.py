"""
URL configuration for stability app.
"""
from django.urls import path
from apps.stability.views import ExperimentDetailView, ExperimentListView, IndicesView

app_name = 'stability'

urlpatterns = [
    path('indices/', IndicesView.as_view(), name='stability-indices'),
    path('experiments/', ExperimentListView.as_view(), name='stability-experiments'),
    path('experiments/<uuid:run_id>/', ExperimentDetailView.as_view(), name='stability-experiment-detail'),
]
