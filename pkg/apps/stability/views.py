"""
Views for sparse indices and the experiment queue.
"""
import logging

from rest_framework import status
from rest_framework.pagination import PageNumberPagination
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema, OpenApiParameter
from drf_spectacular.types import OpenApiTypes

from apps.stability.models import ExperimentRun
from apps.stability.serializers import (
    ExperimentCreateSerializer,
    ExperimentRunSerializer,
    IndicesRequestSerializer,
    IndicesResultSerializer,
)
from apps.stability.services.indices import sparse_index_profile, spsi_norm
from apps.stability.tasks import run_domination_sweep, run_table1_experiment

logger = logging.getLogger(__name__)


def _invalid(serializer):
    return Response(
        {'error': {'code': 400, 'message': serializer.errors}},
        status=status.HTTP_400_BAD_REQUEST
    )


class ExperimentPagination(PageNumberPagination):
    """Pagination for experiment run lists."""
    page_size = 20
    page_size_query_param = 'page_size'
    max_page_size = 100


class IndicesView(APIView):
    """Certified sparse indices s_N."""

    @extend_schema(
        summary="Sparse Indices",
        description="Certified [lower, upper] intervals of s_N for N = 1..nmax (default J + 1). "
                    "Indices with N - 1 > J vanish on the depth-J tree and are flagged as truncated. "
                    "With 'decay' the S_Ψ norm interval is attached.",
        request=IndicesRequestSerializer,
        responses={
            200: IndicesResultSerializer,
            400: {'description': 'Invalid grid, decay or parameters'}
        }
    )
    def post(self, request):
        serializer = IndicesRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        profile = sparse_index_profile(f, data['nmax'], data['eta'], data['refinement'])
        payload = profile.as_dict()
        if 'decay' in data:
            payload['spsi'] = spsi_norm(f, data['decay']['decay'], data['eta']).as_dict()

        logger.info(f"Sparse indices: n={f.n}, J={f.J}, N=1..{profile.n_max}")
        return Response(IndicesResultSerializer(payload).data, status=status.HTTP_200_OK)


class ExperimentListView(APIView):
    """Enqueue and list experiment runs."""

    @extend_schema(
        summary="Enqueue Experiment",
        description="Create an experiment run and hand it to a Celery worker. 'table1' fits the "
                    "sparse-index decay of one classical space; 'domination' sweeps a generated corpus.",
        request=ExperimentCreateSerializer,
        responses={
            202: ExperimentRunSerializer,
            400: {'description': 'Validation error'}
        }
    )
    def post(self, request):
        serializer = ExperimentCreateSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        run = serializer.save()
        task = run_table1_experiment if run.kind == ExperimentRun.Kind.TABLE1 else run_domination_sweep
        task.delay(str(run.id))
        logger.info(f"Enqueued {run.kind} run {run.id}")

        run.refresh_from_db()
        return Response(ExperimentRunSerializer(run).data, status=status.HTTP_202_ACCEPTED)

    @extend_schema(
        summary="List Experiments",
        description="Paginated experiment runs, newest first.",
        parameters=[
            OpenApiParameter(
                name='kind',
                type=OpenApiTypes.STR,
                location=OpenApiParameter.QUERY,
                description='Filter by kind',
                required=False,
                enum=[choice.value for choice in ExperimentRun.Kind]
            ),
            OpenApiParameter(
                name='page',
                type=OpenApiTypes.INT,
                location=OpenApiParameter.QUERY,
                description='Page number',
                required=False
            ),
        ],
        responses={
            200: ExperimentRunSerializer(many=True)
        }
    )
    def get(self, request):
        queryset = ExperimentRun.objects.all()
        kind = request.query_params.get('kind')
        if kind in ExperimentRun.Kind.values:
            queryset = queryset.filter(kind=kind)

        paginator = ExperimentPagination()
        page = paginator.paginate_queryset(queryset, request)
        if page is not None:
            serializer = ExperimentRunSerializer(page, many=True)
            return paginator.get_paginated_response(serializer.data)

        serializer = ExperimentRunSerializer(queryset, many=True)
        return Response(serializer.data, status=status.HTTP_200_OK)


class ExperimentDetailView(APIView):
    """One experiment run."""

    @extend_schema(
        summary="Get Experiment",
        description="Status and, once completed, the report of one run.",
        responses={
            200: ExperimentRunSerializer,
            404: {'description': 'Run not found'}
        }
    )
    def get(self, request, run_id):
        try:
            run = ExperimentRun.objects.get(id=run_id)
        except ExperimentRun.DoesNotExist:
            return Response(
                {'error': {'code': 404, 'message': 'Experiment run not found'}},
                status=status.HTTP_404_NOT_FOUND
            )
        return Response(ExperimentRunSerializer(run).data, status=status.HTTP_200_OK)
