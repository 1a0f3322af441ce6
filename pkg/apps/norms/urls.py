"""
URL configuration for norms app.
"""
from django.urls import path
from apps.norms.views import NormView

app_name = 'norms'

urlpatterns = [
    path('', NormView.as_view(), name='norms-evaluate'),
]
