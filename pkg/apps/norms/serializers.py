"""
Serializers for the classical-norm endpoint.
"""
import math

from rest_framework import serializers

from apps.grid.serializers import GridFunctionSerializer


class NormRequestSerializer(serializers.Serializer):
    """Grid plus the space and its exponents; q = null means q = ∞."""
    SPACE_CHOICES = [
        ('lp', 'Lebesgue'),
        ('morrey', 'Morrey'),
        ('rmt', 'Riesz-Morrey-Tadmor'),
        ('crmt', 'Congruent RMT'),
        ('lorentz', 'Lorentz and Lorentz-Zygmund'),
    ]

    grid = GridFunctionSerializer()
    space = serializers.ChoiceField(choices=SPACE_CHOICES)
    p = serializers.FloatField(min_value=1.0, required=False, default=1.0)
    q = serializers.FloatField(min_value=1.0, required=False, allow_null=True, default=2.0)
    alpha = serializers.FloatField(required=False, default=0.0)

    def validate_q(self, value):
        return math.inf if value is None else value

    def validate(self, attrs):
        if attrs['space'] == 'crmt' and math.isinf(attrs['q']):
            raise serializers.ValidationError({'q': 'The congruent RMT norm needs a finite q.'})
        return attrs


class NormReportSerializer(serializers.Serializer):
    space = serializers.CharField()
    p = serializers.FloatField(allow_null=True)
    q = serializers.FloatField(allow_null=True)
    alpha = serializers.FloatField()
    value = serializers.FloatField()
    route = serializers.CharField()
    witness = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    extras = serializers.DictField(required=False)
