"""
Serializers for sparse indices and experiment runs.
"""
import math

from rest_framework import serializers

from apps.grid.serializers import GridFunctionSerializer
from apps.sequences.serializers import DecaySerializer
from apps.stability.models import ExperimentRun
from apps.stability.services.table1 import TABLE1_SPACES


class IndicesRequestSerializer(serializers.Serializer):
    """s_N intervals of a grid; an S_Ψ norm is added when ``decay`` is given."""
    grid = GridFunctionSerializer()
    nmax = serializers.IntegerField(min_value=1, max_value=64, required=False, allow_null=True, default=None)
    eta = serializers.FloatField(required=False, allow_null=True, default=None)
    refinement = serializers.IntegerField(min_value=0, max_value=4, required=False, allow_null=True, default=None)
    decay = DecaySerializer(required=False)

    def validate_eta(self, value):
        if value is not None and not 0.0 < value < 1.0:
            raise serializers.ValidationError("η must lie in (0, 1)")
        return value


class IndexRowSerializer(serializers.Serializer):
    N = serializers.IntegerField()
    lower = serializers.FloatField()
    upper = serializers.FloatField()


class IndicesResultSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    J = serializers.IntegerField()
    indices = IndexRowSerializer(many=True)
    truncated = serializers.BooleanField()
    routes = serializers.DictField()
    spsi = serializers.DictField(required=False)


class ExperimentRunSerializer(serializers.ModelSerializer):
    """Serializer for experiment run responses."""
    errorMessage = serializers.CharField(source='error_message', read_only=True)
    createdAt = serializers.DateTimeField(source='created_at', read_only=True)
    updatedAt = serializers.DateTimeField(source='updated_at', read_only=True)

    class Meta:
        model = ExperimentRun
        fields = ['id', 'kind', 'status', 'parameters', 'report', 'errorMessage', 'createdAt', 'updatedAt']
        read_only_fields = fields


class ExperimentCreateSerializer(serializers.Serializer):
    """A decay-rate row (space, p, alpha, n, jmin..jmax) or a domination sweep (p, q, alpha, size)."""
    kind = serializers.ChoiceField(choices=ExperimentRun.Kind.choices, required=False, default=ExperimentRun.Kind.TABLE1)
    space = serializers.ChoiceField(choices=list(TABLE1_SPACES), required=False)
    p = serializers.FloatField(min_value=1.0, required=False, default=1.0)
    q = serializers.FloatField(min_value=1.0, required=False, default=2.0)
    alpha = serializers.FloatField(required=False, default=0.0)
    n = serializers.IntegerField(min_value=1, max_value=3, required=False, default=2)
    jmin = serializers.IntegerField(min_value=1, max_value=10, required=False, default=5)
    jmax = serializers.IntegerField(min_value=1, max_value=10, required=False, default=8)
    size = serializers.IntegerField(min_value=1, max_value=1000, required=False, default=200)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)

    def validate_alpha(self, value):
        if not math.isfinite(value):
            raise serializers.ValidationError("α must be finite")
        return value

    def validate(self, attrs):
        if attrs['kind'] == ExperimentRun.Kind.TABLE1:
            if 'space' not in attrs:
                raise serializers.ValidationError({'space': 'A decay-rate run needs a space.'})
            if attrs['jmin'] > attrs['jmax']:
                raise serializers.ValidationError({'jmin': 'jmin must not exceed jmax.'})
        return attrs

    def create(self, validated_data):
        kind = validated_data.pop('kind')
        if kind == ExperimentRun.Kind.TABLE1:
            keys = ('space', 'p', 'alpha', 'n', 'jmin', 'jmax', 'seed')
        else:
            keys = ('p', 'q', 'alpha', 'size', 'seed')
        return ExperimentRun.objects.create(
            kind=kind,
            parameters={key: validated_data.get(key) for key in keys},
        )
