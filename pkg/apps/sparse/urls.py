"""
URL configuration for sparse app.
"""
from django.urls import path
from apps.sparse.views import DominateView, SparseL2View, SRNormView

app_name = 'sparse'

urlpatterns = [
    path('dominate/', DominateView.as_view(), name='sparse-dominate'),
    path('norm/', SRNormView.as_view(), name='sparse-norm'),
    path('l2/', SparseL2View.as_view(), name='sparse-l2'),
]
