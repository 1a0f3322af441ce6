"""
Serializers for sparse-family endpoints.
"""
from rest_framework import serializers

from config.exceptions import ParameterError
from apps.grid.serializers import GridFunctionSerializer
from apps.grid.services.grid import DyadicCube
from apps.sparse.services.domination import SRParams


class SRParamsSerializer(serializers.Serializer):
    """Grid plus the exponents (p, q, α) of the SR scale."""
    grid = GridFunctionSerializer()
    p = serializers.FloatField(min_value=1.0)
    q = serializers.FloatField(min_value=1.0, required=False, default=2.0)
    alpha = serializers.FloatField(required=False, default=0.0)
    eta = serializers.FloatField(min_value=0.0, max_value=1.0, required=False, allow_null=True, default=None)

    def validate(self, attrs):
        try:
            attrs['params'] = SRParams(attrs['p'], attrs['q'], attrs['alpha'])
        except ParameterError as exc:
            raise serializers.ValidationError({'p': str(exc)})
        return attrs


class DominateRequestSerializer(SRParamsSerializer):
    """Sparse domination request."""
    check = serializers.BooleanField(required=False, default=True)


class SRNormRequestSerializer(SRParamsSerializer):
    """SR norm request; ``family`` rows are [level, m1, .., mn]."""
    METHOD_CHOICES = [
        ('certified', 'Certified interval'),
        ('maximal', 'Maximal function bound'),
        ('family', 'Family evaluation'),
        ('bruteforce', 'Exact supremum'),
    ]

    method = serializers.ChoiceField(choices=METHOD_CHOICES, required=False, default='certified')
    family = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
        required=False,
        default=list
    )
    refinement = serializers.IntegerField(min_value=0, max_value=6, required=False, allow_null=True, default=None)

    def validate_family(self, value):
        cubes = []
        for row in value:
            if len(row) < 2:
                raise serializers.ValidationError(f"Family row {row} must be [level, m1, .., mn]")
            try:
                cubes.append(DyadicCube(row[0], tuple(row[1:])))
            except ParameterError as exc:
                raise serializers.ValidationError(str(exc))
        return cubes

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['method'] == 'family' and not attrs['family']:
            raise serializers.ValidationError({'family': 'The family method needs a non-empty family.'})
        return attrs


class SparseL2RequestSerializer(serializers.Serializer):
    """Identity and oscillation characterizations of L²."""
    grid = GridFunctionSerializer()
    refinement = serializers.IntegerField(min_value=0, max_value=6, required=False, allow_null=True, default=None)


class IntervalSerializer(serializers.Serializer):
    lower = serializers.FloatField()
    upper = serializers.FloatField()
    midpoint = serializers.FloatField(required=False)
    width = serializers.FloatField(required=False)


class DominateResultSerializer(serializers.Serializer):
    constant = serializers.FloatField()
    family = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    size = serializers.IntegerField()
    sparse = serializers.BooleanField()
    worst_ratio = serializers.FloatField()
    max_ratio = serializers.FloatField(allow_null=True)


class SRNormResultSerializer(serializers.Serializer):
    method = serializers.CharField()
    value = serializers.FloatField(allow_null=True)
    certified = IntervalSerializer(allow_null=True)
    family = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()), required=False)


class SparseL2ResultSerializer(serializers.Serializer):
    identity = IntervalSerializer()
    oscillation = IntervalSerializer()
