"""
Serializers for grid payloads shared by every numerical endpoint.
"""
from rest_framework import serializers

from config.exceptions import ParameterError
from apps.grid.services.grid import GridFunction, MAX_DIMENSION


class GridFunctionSerializer(serializers.Serializer):
    """A piecewise-constant grid given as row-major cell values."""
    n = serializers.IntegerField(min_value=1, max_value=MAX_DIMENSION)
    J = serializers.IntegerField(min_value=0, max_value=10)
    values = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    nonneg = serializers.BooleanField(required=False, default=False)

    def validate(self, attrs):
        """Check the cell count and build the GridFunction."""
        try:
            attrs['grid'] = GridFunction.from_flat(
                attrs['n'], attrs['J'], attrs['values'], nonneg=attrs['nonneg']
            )
        except ParameterError as exc:
            raise serializers.ValidationError({'values': str(exc)})
        return attrs


class GridRequestSerializer(serializers.Serializer):
    """Base request carrying a single grid."""
    grid = GridFunctionSerializer()


class GridSummarySerializer(serializers.Serializer):
    """Integral-table summary of a grid."""
    total_integral = serializers.FloatField()
    average = serializers.FloatField()
    oscillation = serializers.FloatField()
    level_integrals = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()))
    fstar = serializers.ListField(child=serializers.FloatField())
    fstarstar = serializers.ListField(child=serializers.FloatField())
    gradient_l2 = serializers.FloatField(allow_null=True)
