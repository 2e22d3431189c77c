from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response


@api_view(['GET'])
@permission_classes([AllowAny])
def hello(request):
    """Vue de test - Bienvenue sur SpectraBench API"""
    return Response({
        "message": "Bienvenue sur SpectraBench API",
        "version": "1.0.0",
        "description": "Spectres, bornes extrémales et recherches exhaustives pour les graphes sans forêt d'étoiles",
        "endpoints": {
            "construct": "/api/graphs/construct/",
            "spectrum": "/api/graphs/spectrum/",
            "perron": "/api/graphs/perron/",
            "containment": "/api/graphs/containment/",
            "bounds": "/api/bounds/",
            "thresholds": "/api/thresholds/",
            "search_runs": "/api/search-runs/",
            "schema": "/api/schema/"
        }
    })
