"""
Serializers for the Littlewood–Paley and Haar endpoints.
"""
from rest_framework import serializers

from apps.grid.serializers import GridFunctionSerializer
from apps.sequences.serializers import DecaySerializer


class SpectralRequestSerializer(serializers.Serializer):
    """V_Ψ and T_Ψ norms; a Besov norm is added when ``s`` is given."""
    grid = GridFunctionSerializer()
    decay = DecaySerializer(required=False, default=dict)
    phi = DecaySerializer(required=False)
    padding = serializers.IntegerField(min_value=2, max_value=7, required=False, allow_null=True, default=None)
    s = serializers.FloatField(required=False, allow_null=True, default=None)
    p = serializers.FloatField(min_value=1.0, required=False, default=2.0)
    q = serializers.FloatField(min_value=1.0, required=False, allow_null=True, default=2.0)

    def validate_decay(self, value):
        if 'decay' not in value:
            value = DecaySerializer(data=value)
            value.is_valid(raise_exception=True)
            value = value.validated_data
        return value

    def validate(self, attrs):
        if 'phi' in attrs and attrs['grid']['n'] != 2:
            raise serializers.ValidationError({'phi': 'The T_Φ ↪ V_Ψ certificate is set in n = 2.'})
        return attrs


class SpectralBlockSerializer(serializers.Serializer):
    j = serializers.IntegerField()
    linf = serializers.FloatField()
    l2 = serializers.FloatField()


class SpectralResultSerializer(serializers.Serializer):
    vpsi = serializers.FloatField()
    tpsi = serializers.DictField(child=serializers.FloatField())
    j_max = serializers.IntegerField()
    truncated = serializers.BooleanField()
    profile = serializers.DictField()
    blocks = SpectralBlockSerializer(many=True)
    besov = serializers.FloatField(required=False)
    nikolskii = serializers.FloatField(required=False)
    certificate = serializers.DictField(required=False)


class HaarRequestSerializer(serializers.Serializer):
    grid = GridFunctionSerializer()


class HaarResultSerializer(serializers.Serializer):
    """Mean and per-level coefficients keyed by signature, e.g. '10'."""
    mean = serializers.FloatField()
    energy = serializers.FloatField()
    levels = serializers.ListField(child=serializers.DictField())
