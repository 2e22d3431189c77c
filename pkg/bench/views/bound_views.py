from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework import status

from ..exceptions import BenchError
from ..extremal import bound_report, threshold_report
from ..serializers import BoundQuerySerializer, BoundReportSerializer, ThresholdQuerySerializer
from .erreurs import reponse_erreur


@api_view(['GET'])
@permission_classes([AllowAny])
def evaluer_borne(request):
    """Évalue une borne : t17, t18, c19, conj32 (n, k, d) ou l21, t12 (n, forest)"""
    query = BoundQuerySerializer(data=request.query_params)
    if not query.is_valid():
        return Response(query.errors, status=status.HTTP_400_BAD_REQUEST)

    data = query.validated_data
    try:
        report = bound_report(data['kind'], data['n'], k=data.get('k'), d=data.get('d'),
                              forest=data.get('forest'))
    except BenchError as exc:
        return reponse_erreur(exc)
    return Response(BoundReportSerializer(report).data)


@api_view(['GET'])
@permission_classes([AllowAny])
def evaluer_seuil(request):
    """Seuil d'ordre exact (rationnel) d'un résultat"""
    query = ThresholdQuerySerializer(data=request.query_params)
    if not query.is_valid():
        return Response(query.errors, status=status.HTTP_400_BAD_REQUEST)

    try:
        report = threshold_report(query.validated_data['kind'], query.validated_data['forest'])
    except BenchError as exc:
        return reponse_erreur(exc)
    return Response(BoundReportSerializer(report).data)
