from rest_framework import status
from rest_framework.response import Response

from ..exceptions import BenchError


def reponse_erreur(exc: BenchError) -> Response:
    """Erreur métier convertie en réponse 400"""
    return Response({'error': exc.message, 'code': exc.code}, status=status.HTTP_400_BAD_REQUEST)
