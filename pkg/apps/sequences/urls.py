"""
URL configuration for sequences app.
"""
from django.urls import path
from apps.sequences.views import DecayView, ExampleView, KFunctionalView

app_name = 'sequences'

urlpatterns = [
    path('decay/', DecayView.as_view(), name='sequences-decay'),
    path('k-functional/', KFunctionalView.as_view(), name='sequences-k-functional'),
    path('examples/', ExampleView.as_view(), name='sequences-examples'),
]
