"""
Views for decays, K-functionals and the V_Ψ / T_Ψ separating examples.
"""
import logging

from rest_framework import status
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from apps.grid.services.reports import to_jsonable
from apps.sequences.serializers import (
    DecayRequestSerializer,
    DecayResultSerializer,
    ExampleRequestSerializer,
    KFunctionalRequestSerializer,
    KFunctionalResultSerializer,
)
from apps.sequences.services.decay import decay_certify
from apps.sequences.services.sequences import (
    BlockSequence,
    besov_weights,
    embedding_check,
    extrapolation_norm,
    k_functional,
    tpsi_not_vpsi_example,
    vpsi_not_tpsi_example,
    vpsi_seq,
)

logger = logging.getLogger(__name__)


def _invalid(serializer):
    return Response(
        {'error': {'code': 400, 'message': serializer.errors}},
        status=status.HTTP_400_BAD_REQUEST
    )


class DecayView(APIView):
    """Admissibility, doubling and tail certificate of a decay."""

    @extend_schema(
        summary="Certify Decay",
        description="Tabulate Ψ on 0..N_max and report admissibility, doubling and tail certificates.",
        request=DecayRequestSerializer,
        responses={
            200: DecayResultSerializer,
            400: {'description': 'Non-positive or increasing table'}
        }
    )
    def post(self, request):
        serializer = DecayRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        psi = decay_certify(data['decay']['decay'], c=data['c'])
        payload = psi.as_dict()
        payload['values'] = psi.values.tolist()
        return Response(DecayResultSerializer(payload).data, status=status.HTTP_200_OK)


class KFunctionalView(APIView):
    """Exact K-functional of weighted ℓ₁ pairs and the extrapolation supremum."""

    @extend_schema(
        summary="K-Functional",
        description="K(t, a) = Σ min(w0_j, t w1_j)|a_j| at every requested t. With a decay, also "
                    "sup_N K(2^{-2N}, a)/Ψ(N)² and the matching v_Ψ sequence norm.",
        request=KFunctionalRequestSerializer,
        responses={
            200: KFunctionalResultSerializer,
            400: {'description': 'Invalid weights, t or decay'}
        }
    )
    def post(self, request):
        serializer = KFunctionalRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        a = data['a']
        default_w0, default_w1 = besov_weights(len(a), data['s'])
        w0 = data['w0'] or default_w0
        w1 = data['w1'] or default_w1
        payload = {
            'values': [k_functional(t, a, w0, w1) for t in data['t']],
            'extrapolation': None,
            'vpsi': None,
        }
        if 'decay' in data:
            psi = data['decay']['decay']
            payload['extrapolation'] = extrapolation_norm(a, psi, data['s'])
            payload['vpsi'] = vpsi_seq(BlockSequence.from_scalars(a), psi)
        return Response(KFunctionalResultSerializer(payload).data, status=status.HTTP_200_OK)


class ExampleView(APIView):
    """Sequences separating V_Ψ from T_Ψ, and the tail condition for T_Φ ↪ V_Ψ."""

    @extend_schema(
        summary="Separating Examples",
        description="tpsi_not_vpsi: telescoping coefficients with t_Ψ-norm 1 and unbounded v_Ψ ratios. "
                    "vpsi_not_tpsi: windows of ones. embedding: max_N Σ_{j≥N}Φ(j)/Ψ(N)².",
        request=ExampleRequestSerializer,
        responses={200: {'description': 'Example report'}, 400: {'description': 'Invalid decay'}}
    )
    def post(self, request):
        serializer = ExampleRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        psi = data['decay']['decay']
        if data['example'] == 'tpsi_not_vpsi':
            report = tpsi_not_vpsi_example(psi)
        elif data['example'] == 'vpsi_not_tpsi':
            report = vpsi_not_tpsi_example(psi, [2 ** m for m in range(data['max_width_exponent'] + 1)])
        else:
            report = embedding_check(data['phi']['decay'], psi).as_dict()
        return Response(to_jsonable(report), status=status.HTTP_200_OK)
