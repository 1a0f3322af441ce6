"""
Serializers for decay certification, K-functionals and the separating examples.
"""
from rest_framework import serializers

from config.exceptions import ParameterError
from apps.sequences.services.decay import DECAY_KINDS, make_decay, tabulated_decay


class DecaySerializer(serializers.Serializer):
    """Either a closed-form decay (kind, parameter) or an explicit table Ψ(0..N_max)."""
    kind = serializers.ChoiceField(choices=sorted(DECAY_KINDS) + ['tabulated'], required=False, default='shifted_power')
    parameter = serializers.FloatField(required=False, default=0.5)
    n_max = serializers.IntegerField(min_value=1, max_value=1024, required=False, allow_null=True, default=None)
    values = serializers.ListField(child=serializers.FloatField(), required=False, default=list)

    def validate(self, attrs):
        try:
            if attrs['kind'] == 'tabulated':
                attrs['decay'] = tabulated_decay(attrs['values'])
            else:
                attrs['decay'] = make_decay(attrs['kind'], attrs['parameter'], attrs['n_max'])
        except ParameterError as exc:
            raise serializers.ValidationError({'values' if attrs['kind'] == 'tabulated' else 'parameter': str(exc)})
        return attrs


class DecayRequestSerializer(serializers.Serializer):
    decay = DecaySerializer()
    c = serializers.IntegerField(min_value=2, required=False, allow_null=True, default=None)


class DecayResultSerializer(serializers.Serializer):
    name = serializers.CharField()
    n_max = serializers.IntegerField()
    descriptor = serializers.DictField()
    certificate = serializers.DictField()
    values = serializers.ListField(child=serializers.FloatField())


class KFunctionalRequestSerializer(serializers.Serializer):
    """K(t, a) for the pair (ℓ₁(w0), ℓ₁(w1)); weights default to 2^{-2j} and 2^{sj}."""
    t = serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=False)
    a = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    s = serializers.FloatField(required=False, default=0.0)
    w0 = serializers.ListField(child=serializers.FloatField(), required=False, default=list)
    w1 = serializers.ListField(child=serializers.FloatField(), required=False, default=list)
    decay = DecaySerializer(required=False)

    def validate(self, attrs):
        for name in ('w0', 'w1'):
            if attrs[name] and len(attrs[name]) != len(attrs['a']):
                raise serializers.ValidationError({name: f"Expected {len(attrs['a'])} weights."})
        return attrs


class KFunctionalResultSerializer(serializers.Serializer):
    values = serializers.ListField(child=serializers.FloatField())
    extrapolation = serializers.FloatField(allow_null=True)
    vpsi = serializers.FloatField(allow_null=True)


class ExampleRequestSerializer(serializers.Serializer):
    EXAMPLE_CHOICES = [
        ('tpsi_not_vpsi', 'Telescoping sequence in t_Ψ but not v_Ψ'),
        ('vpsi_not_tpsi', 'Bounded window sequence in v_Ψ but not t_Ψ'),
        ('embedding', 'Tail condition for T_Φ ↪ V_Ψ'),
    ]

    example = serializers.ChoiceField(choices=EXAMPLE_CHOICES)
    decay = DecaySerializer()
    phi = DecaySerializer(required=False)
    max_width_exponent = serializers.IntegerField(min_value=0, max_value=20, required=False, default=10)

    def validate(self, attrs):
        if attrs['example'] == 'embedding' and 'phi' not in attrs:
            raise serializers.ValidationError({'phi': 'The embedding check needs Φ.'})
        return attrs
