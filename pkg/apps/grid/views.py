"""
Views for grid inspection.
"""
from rest_framework import status
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from apps.grid.serializers import GridRequestSerializer, GridSummarySerializer
from apps.grid.services.grid import (
    DyadicCube,
    build_table,
    cube_average,
    discrete_gradient_l2,
    oscillation_integral,
    rearrangement,
)


class GridSummaryView(APIView):
    """Integral table, rearrangement and gradient of a grid."""

    @extend_schema(
        summary="Summarize Grid",
        description="Per-level dyadic integrals of |f|, the root average and oscillation, "
                    "the decreasing rearrangement and the discrete gradient norm.",
        request=GridRequestSerializer,
        responses={
            200: GridSummarySerializer,
            400: {'description': 'Invalid grid'}
        }
    )
    def post(self, request):
        """Summarize a grid."""
        serializer = GridRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(
                {'error': {'code': 400, 'message': serializer.errors}},
                status=status.HTTP_400_BAD_REQUEST
            )

        f = serializer.validated_data['grid']['grid']
        table = build_table(f)
        root = DyadicCube.root(f.n)
        arrangement = rearrangement(f)

        data = {
            'total_integral': f.total_integral(),
            'average': cube_average(f, root, table),
            'oscillation': oscillation_integral(f, root, table),
            'level_integrals': [level.ravel().tolist() for level in table.absolute],
            'fstar': arrangement.fstar.tolist(),
            'fstarstar': arrangement.fstarstar.tolist(),
            'gradient_l2': discrete_gradient_l2(f) if f.n <= 2 else None,
        }
        return Response(GridSummarySerializer(data).data, status=status.HTTP_200_OK)
