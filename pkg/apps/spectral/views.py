"""
Views for Littlewood–Paley norms and Haar expansions.
"""
import logging
import math

from rest_framework import status
from rest_framework.views import APIView
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from apps.spectral.serializers import (
    HaarRequestSerializer,
    HaarResultSerializer,
    SpectralRequestSerializer,
    SpectralResultSerializer,
)
from apps.spectral.services.haar import haar_coeffs
from apps.spectral.services.littlewood_paley import (
    BesovParams,
    embedding_certificate,
    lp_blocks,
    spectral_norms,
)

logger = logging.getLogger(__name__)


def _invalid(serializer):
    return Response(
        {'error': {'code': 400, 'message': serializer.errors}},
        status=status.HTTP_400_BAD_REQUEST
    )


class SpectralNormView(APIView):
    """V_Ψ, T_Ψ (blockwise and Fourier) and Besov norms from Littlewood–Paley blocks."""

    @extend_schema(
        summary="Spectral Norms",
        description="Littlewood–Paley blocks on the zero-padded torus with a quintic smoothstep "
                    "profile. Suprema over N stop at the finest block; 'truncated' reports when it "
                    "still carries energy. With 'phi' (n = 2) the T_Φ ↪ V_Ψ certificate is attached.",
        request=SpectralRequestSerializer,
        responses={
            200: SpectralResultSerializer,
            400: {'description': 'Invalid grid, decay or padding'}
        }
    )
    def post(self, request):
        serializer = SpectralRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        data = serializer.validated_data
        f = data['grid']['grid']
        psi = data['decay']['decay']
        besov = None
        if data['s'] is not None:
            besov = BesovParams(data['s'], data['p'], math.inf if data['q'] is None else data['q'])

        payload = spectral_norms(f, psi, besov, data['padding'])
        if 'phi' in data:
            decomposition = lp_blocks(f, data['padding'])
            payload['certificate'] = embedding_certificate(decomposition, data['phi']['decay'], psi).as_dict()
        logger.info(f"Spectral norms: n={f.n}, J={f.J}, j_max={payload['j_max']}, vpsi={payload['vpsi']}")
        return Response(SpectralResultSerializer(payload).data, status=status.HTTP_200_OK)


class HaarView(APIView):
    """Orthogonal Haar coefficients of a grid."""

    @extend_schema(
        summary="Haar Expansion",
        description="λ_{Q,ε} = |Q|^{-1} ∫ f h_{Q,ε} per level, flattened row-major per signature.",
        request=HaarRequestSerializer,
        responses={200: HaarResultSerializer, 400: {'description': 'Invalid grid'}}
    )
    def post(self, request):
        serializer = HaarRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)

        coeffs = haar_coeffs(serializer.validated_data['grid']['grid'])
        payload = {
            'mean': coeffs.mean,
            'energy': coeffs.energy(),
            'levels': [
                {''.join(map(str, eps)): lam.ravel().tolist() for eps, lam in level.items()}
                for level in coeffs.levels
            ],
        }
        return Response(HaarResultSerializer(payload).data, status=status.HTTP_200_OK)
