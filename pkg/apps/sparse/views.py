"""
Views for sparse domination and SR norms.
"""
import logging

from rest_framework import status
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from apps.sparse.serializers import (
    DominateRequestSerializer,
    DominateResultSerializer,
    SparseL2RequestSerializer,
    SparseL2ResultSerializer,
    SRNormRequestSerializer,
    SRNormResultSerializer,
)
from apps.sparse.services.domination import check_domination, domination_constant, sparse_dominate
from apps.sparse.services.families import SparseFamily, verify_sparse
from apps.sparse.services.sr import (
    exact_supremum,
    sparse_l2_norms,
    sr_norm_certified,
    sr_norm_family,
    sr_norm_maximal,
    sr_scores,
)

logger = logging.getLogger(__name__)


def _invalid(serializer):
    return Response(
        {'error': {'code': 400, 'message': serializer.errors}},
        status=status.HTTP_400_BAD_REQUEST
    )


class DominateView(APIView):
    """Constructive sparse domination."""

    @extend_schema(
        summary="Sparse Domination",
        description="Run the stopping-time selection for M_{λ,α,Q0} f and return the family, "
                    "its sparseness certificate and, optionally, the pointwise domination ratio.",
        request=DominateRequestSerializer,
        responses={
            200: DominateResultSerializer,
            400: {'description': 'Invalid grid or parameters outside the monotone regime'}
        }
    )
    def post(self, request):
        serializer = DominateRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        params = data['params']
        family = sparse_dominate(f, params, data['eta'])
        report = verify_sparse(family)
        check = check_domination(f, family, params) if data['check'] else None

        payload = {
            'constant': domination_constant(params),
            'family': [list(row) for row in family.rows()],
            'size': len(family),
            'sparse': report.ok,
            'worst_ratio': report.worst_ratio,
            'max_ratio': check.max_ratio if check else None,
        }
        return Response(DominateResultSerializer(payload).data, status=status.HTTP_200_OK)


class SRNormView(APIView):
    """SR_{p,q}log^α norm by the requested route."""

    @extend_schema(
        summary="SR Norm",
        description="certified: [budget-program lower bound, maximal/full-sum upper bound]; "
                    "maximal: ‖M f‖_q and the 2^{1/q} upper bound; family: evaluation on a verified "
                    "family; bruteforce: exact supremum on small trees (422 above the budget).",
        request=SRNormRequestSerializer,
        responses={
            200: SRNormResultSerializer,
            400: {'description': 'Invalid parameters or unverified family'},
            422: {'description': 'Exhaustive search budget exceeded'}
        }
    )
    def post(self, request):
        serializer = SRNormRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        params = data['params']
        method = data['method']
        payload = {'method': method, 'value': None, 'certified': None}

        if method == 'certified':
            interval = sr_norm_certified(f, params, data['eta'], data['refinement'])
            payload['value'] = interval.midpoint
            payload['certified'] = interval.as_dict()
        elif method == 'maximal':
            bound = sr_norm_maximal(f, params, data['eta'])
            payload['value'] = bound.value
            payload['certified'] = {'lower': 0.0, 'upper': bound.upper}
        elif method == 'family':
            family = SparseFamily.of(f.n, f.J, data['family'], data['eta'])
            payload['value'] = sr_norm_family(f, family, params)
        else:
            result = exact_supremum(sr_scores(f, params), f.n, params.q, data['eta'])
            payload['value'] = result.value
            payload['certified'] = {'lower': result.value, 'upper': result.value}
            payload['family'] = [list(row) for row in result.family.rows()]

        logger.info(f"SR norm via {method}: n={f.n}, J={f.J}, p={params.p}, q={params.q}, α={params.alpha}")
        return Response(SRNormResultSerializer(payload).data, status=status.HTTP_200_OK)


class SparseL2View(APIView):
    """Sparse characterizations of L² and of the L² oscillation."""

    @extend_schema(
        summary="Sparse L² Norms",
        description="Certified brackets for the identity (SR_{2,2}) and oscillation characterizations.",
        request=SparseL2RequestSerializer,
        responses={
            200: SparseL2ResultSerializer,
            400: {'description': 'Invalid grid'}
        }
    )
    def post(self, request):
        serializer = SparseL2RequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        result = sparse_l2_norms(data['grid']['grid'], refinement=data['refinement'])
        return Response(SparseL2ResultSerializer(result).data, status=status.HTTP_200_OK)
