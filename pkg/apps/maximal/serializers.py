"""
Serializers for maximal-operator endpoints.
"""
from rest_framework import serializers

from apps.grid.serializers import GridFunctionSerializer


class DyadicMaximalRequestSerializer(serializers.Serializer):
    """Weighted dyadic maximal function request."""
    grid = GridFunctionSerializer()
    lam = serializers.FloatField(min_value=0.0)
    alpha = serializers.FloatField(required=False, default=0.0)


class FractionalMaximalRequestSerializer(serializers.Serializer):
    """Shifted-grid fractional maximal function request."""
    grid = GridFunctionSerializer()
    lam = serializers.FloatField(min_value=0.0)


class SobolevNormRequestSerializer(serializers.Serializer):
    """Negative Sobolev norm request."""
    ROUTE_CHOICES = [
        ('direct', 'Direct'),
        ('fourier', 'Fourier'),
    ]

    grid = GridFunctionSerializer()
    lam = serializers.FloatField()
    q = serializers.FloatField(min_value=1.0, required=False, default=2.0)
    padding = serializers.IntegerField(min_value=1, max_value=7, required=False, allow_null=True, default=None)
    route = serializers.ChoiceField(choices=ROUTE_CHOICES, required=False, default='direct')

    def validate(self, attrs):
        if attrs['route'] == 'fourier' and attrs['q'] != 2.0:
            raise serializers.ValidationError({'q': 'The Fourier route is defined for q = 2 only.'})
        return attrs


class MaximalResultSerializer(serializers.Serializer):
    """Finest-cell values of a maximal function."""
    n = serializers.IntegerField()
    J = serializers.IntegerField()
    values = serializers.ListField(child=serializers.FloatField())
    sup = serializers.FloatField()


class SobolevNormResultSerializer(serializers.Serializer):
    """Negative Sobolev norm with the comparison maximal norm."""
    value = serializers.FloatField()
    route = serializers.CharField()
    padding = serializers.IntegerField()
    maximal_norm = serializers.FloatField()
    ratio = serializers.FloatField(allow_null=True)
