"""
URL configuration for maximal app.
"""
from django.urls import path
from apps.maximal.views import DyadicMaximalView, FractionalMaximalView, SobolevNormView

app_name = 'maximal'

urlpatterns = [
    path('dyadic/', DyadicMaximalView.as_view(), name='dyadic-maximal'),
    path('fractional/', FractionalMaximalView.as_view(), name='fractional-maximal'),
    path('sobolev/', SobolevNormView.as_view(), name='sobolev-norm'),
]
