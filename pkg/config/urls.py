"""
URL configuration for the sparsekit project.
"""
from django.contrib import admin
from django.urls import path, include
from drf_spectacular.views import (
    SpectacularAPIView,
    SpectacularSwaggerView,
    SpectacularRedocView,
)

urlpatterns = [
    path('admin/', admin.site.urls),
    # API Documentation
    path('api/schema/', SpectacularAPIView.as_view(), name='schema'),
    path('api/docs/', SpectacularSwaggerView.as_view(url_name='schema'), name='swagger-ui'),
    path('api/redoc/', SpectacularRedocView.as_view(url_name='schema'), name='redoc'),
    # API v1 endpoints
    path('v1/grid/', include('apps.grid.urls')),
    path('v1/maximal/', include('apps.maximal.urls')),
    path('v1/sparse/', include('apps.sparse.urls')),
    path('v1/norms/', include('apps.norms.urls')),
    path('v1/spectral/', include('apps.spectral.urls')),
    path('v1/sequences/', include('apps.sequences.urls')),
    path('v1/stability/', include('apps.stability.urls')),
]
