"""
Views for the classical norms.
"""
import logging
import math

from rest_framework import status
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from apps.norms.serializers import NormReportSerializer, NormRequestSerializer
from apps.norms.services.dispatch import evaluate_space

logger = logging.getLogger(__name__)


def _invalid(serializer):
    return Response(
        {'error': {'code': 400, 'message': serializer.errors}},
        status=status.HTTP_400_BAD_REQUEST
    )


class NormView(APIView):
    """Lebesgue, Morrey, RMT, congruent RMT and Lorentz norms of a grid."""

    @extend_schema(
        summary="Classical Norm",
        description="Exact classical norm with its attaining cubes. RMT is the exact antichain "
                    "dynamic program; q = null means q = ∞.",
        request=NormRequestSerializer,
        responses={
            200: NormReportSerializer,
            400: {'description': 'Invalid grid or exponents'}
        }
    )
    def post(self, request):
        serializer = NormRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        report = evaluate_space(f, data['space'], data['p'], data['q'], data['alpha'])
        logger.info(f"{report.space} norm: n={f.n}, J={f.J}, value={report.value}")

        payload = report.as_dict()
        payload['q'] = None if payload['q'] is not None and math.isinf(payload['q']) else payload['q']
        payload['extras'] = report.extras
        return Response(NormReportSerializer(payload).data, status=status.HTTP_200_OK)
