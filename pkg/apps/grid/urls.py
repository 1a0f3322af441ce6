"""
URL configuration for grid app.
"""
from django.urls import path
from apps.grid.views import GridSummaryView

app_name = 'grid'

urlpatterns = [
    path('summary/', GridSummaryView.as_view(), name='grid-summary'),
]
