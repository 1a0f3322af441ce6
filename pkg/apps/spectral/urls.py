"""
URL configuration for spectral app.
"""
from django.urls import path
from apps.spectral.views import HaarView, SpectralNormView

app_name = 'spectral'

urlpatterns = [
    path('norms/', SpectralNormView.as_view(), name='spectral-norms'),
    path('haar/', HaarView.as_view(), name='spectral-haar'),
]
