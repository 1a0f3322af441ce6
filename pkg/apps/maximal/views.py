"""
Views for maximal operators and Riesz potentials.
"""
import logging

from rest_framework import status
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from apps.grid.services.config import sparsekit_setting
from apps.maximal.serializers import (
    DyadicMaximalRequestSerializer,
    FractionalMaximalRequestSerializer,
    MaximalResultSerializer,
    SobolevNormRequestSerializer,
    SobolevNormResultSerializer,
)
from apps.maximal.services.maximal import MaximalParams, dyadic_maximal, fractional_maximal
from apps.maximal.services.riesz import (
    fractional_maximal_norm,
    sobolev_negative_norm,
    sobolev_negative_norm_fourier,
)

logger = logging.getLogger(__name__)


def _invalid(serializer):
    return Response(
        {'error': {'code': 400, 'message': serializer.errors}},
        status=status.HTTP_400_BAD_REQUEST
    )


def _maximal_payload(result):
    return {
        'n': result.n,
        'J': result.J,
        'values': result.flat.tolist(),
        'sup': float(result.values.max()),
    }


class DyadicMaximalView(APIView):
    """Weighted dyadic maximal function M_{λ,α,Q0}."""

    @extend_schema(
        summary="Dyadic Maximal Function",
        description="Evaluate max over dyadic Q ∋ x of |Q|^{λ/n-1}(1+ln(1/|Q|))^α ∫_Q|f| on every finest cell.",
        request=DyadicMaximalRequestSerializer,
        responses={
            200: MaximalResultSerializer,
            400: {'description': 'Invalid grid or λ outside [0, n)'}
        }
    )
    def post(self, request):
        serializer = DyadicMaximalRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        result = dyadic_maximal(f, MaximalParams(lam=data['lam'], alpha=data['alpha']))
        return Response(MaximalResultSerializer(_maximal_payload(result)).data, status=status.HTTP_200_OK)


class FractionalMaximalView(APIView):
    """Shifted-grid fractional maximal function."""

    @extend_schema(
        summary="Fractional Maximal Function",
        description="Approximate the all-cubes fractional maximal function with the 3^n shifted dyadic grids.",
        request=FractionalMaximalRequestSerializer,
        responses={
            200: MaximalResultSerializer,
            400: {'description': 'Invalid grid or λ outside [0, n)'}
        }
    )
    def post(self, request):
        serializer = FractionalMaximalRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        result = fractional_maximal(data['grid']['grid'], data['lam'])
        return Response(MaximalResultSerializer(_maximal_payload(result)).data, status=status.HTTP_200_OK)


class SobolevNormView(APIView):
    """Negative Sobolev norm ‖I_λ(|f|)‖_{L^q} on a padded domain."""

    @extend_schema(
        summary="Negative Sobolev Norm",
        description="Riesz-potential norm by direct convolution, or for q = 2 by the Fourier multiplier "
                    "on the padded torus. The fractional maximal norm is returned for comparison.",
        request=SobolevNormRequestSerializer,
        responses={
            200: SobolevNormResultSerializer,
            400: {'description': 'Invalid grid or parameters'}
        }
    )
    def post(self, request):
        serializer = SobolevNormRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        padding = sparsekit_setting('PADDING', data['padding'])
        if data['route'] == 'fourier':
            value = sobolev_negative_norm_fourier(f, data['lam'], padding)
        else:
            value = sobolev_negative_norm(f, data['lam'], data['q'], padding)

        maximal_norm = fractional_maximal_norm(f, data['lam'], data['q'])
        logger.info(f"Sobolev norm computed: n={f.n}, J={f.J}, λ={data['lam']}, route={data['route']}")

        payload = {
            'value': value,
            'route': data['route'],
            'padding': padding,
            'maximal_norm': maximal_norm,
            'ratio': value / maximal_norm if maximal_norm > 0 else None,
        }
        return Response(SobolevNormResultSerializer(payload).data, status=status.HTTP_200_OK)
